// Counts heap usage around hex_digits to show the working set does not grow
// with the digit position.
#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <new>

#include <gmp.h>

#include "polylad/spigot/spigot.hpp"

namespace {

std::atomic<long> live{0}, peak{0};
std::atomic<bool> tracking{false};

struct Header {
    std::size_t size;
    std::size_t pad;
};

void* counted_alloc(std::size_t n) {
    auto* h = static_cast<Header*>(std::malloc(n + sizeof(Header)));
    if (!h) throw std::bad_alloc();
    h->size = n;
    if (tracking) {
        long now = live += static_cast<long>(n);
        long p = peak;
        while (now > p && !peak.compare_exchange_weak(p, now)) {
        }
    }
    return h + 1;
}

void counted_free(void* p) {
    if (!p) return;
    auto* h = static_cast<Header*>(p) - 1;
    if (tracking) live -= static_cast<long>(h->size);
    std::free(h);
}

// GMP and MPFR allocate through these, so big-integer temporaries count too.
void* gmp_alloc(std::size_t n) { return counted_alloc(n); }
void* gmp_realloc(void* p, std::size_t old_size, std::size_t n) {
    void* q = counted_alloc(n);
    std::memcpy(q, p, old_size < n ? old_size : n);
    counted_free(p);
    return q;
}
void gmp_free(void* p, std::size_t) { counted_free(p); }

long peak_bytes(const char* formula, long d) {
    polylad::spigot::DigitRequest r;
    r.formula = formula;
    r.position = d;
    r.count = 16;
    live = 0;
    peak = 0;
    tracking = true;
    auto run = polylad::spigot::hex_digits(r);
    tracking = false;
    (void)run;
    return peak;
}

}  // namespace

void* operator new(std::size_t n) { return counted_alloc(n); }
void* operator new[](std::size_t n) { return counted_alloc(n); }
void operator delete(void* p) noexcept { counted_free(p); }
void operator delete[](void* p) noexcept { counted_free(p); }
void operator delete(void* p, std::size_t) noexcept { counted_free(p); }
void operator delete[](void* p, std::size_t) noexcept { counted_free(p); }

int main() {
    mp_set_memory_functions(gmp_alloc, gmp_realloc, gmp_free);
    int failures = 0;
    for (const char* f : {"pi", "zeta3", "zeta5"}) {
        peak_bytes(f, 10);  // warm static tables
        long small = peak_bytes(f, 100);
        long large = peak_bytes(f, 300000);
        bool ok = large <= small + 1024;
        std::printf("%s %s peak heap d=100: %ld bytes, d=300000: %ld bytes\n", ok ? "PASS" : "FAIL", f, small, large);
        failures += ok ? 0 : 1;
    }
    return failures == 0 ? 0 : 1;
}
