#pragma once

#include <string>
#include <vector>

#include "polylad/ladders/forms.hpp"
#include "polylad/mp/real.hpp"

namespace polylad::relfind {

using ladders::CheckReport;
using mp::BigInt;
using mp::Bits;
using mp::MpReal;

struct RelationQuery {
    std::vector<MpReal> values;  // all at the same precision
    int max_digits = 20;         // coefficient height bound, decimal digits
    long max_iterations = 100000;
};

enum class RelationStatus { found, none_within_bound, inconclusive };

std::string to_string(RelationStatus s);

struct RelationResult {
    RelationStatus status = RelationStatus::inconclusive;
    std::vector<BigInt> vector;  // gcd 1, first nonzero entry positive
    double log2_residual = 0;    // |sum v_i x_i| when found
    long iterations = 0;
    // Lower bound on the Euclidean norm of any relation, from the final H.
    double log10_norm_bound = 0;
};

// Ferguson-Bailey PSLQ with gamma = sqrt(4/3) in MPFR arithmetic.
// Requires at least n * max_digits * log2(10) bits for n values.
RelationResult pslq(const RelationQuery& q);

// |sum v_i x_i|; passes below 2^-(P-64).
CheckReport verify_vector(const std::vector<BigInt>& v, const std::vector<MpReal>& values, Bits P);

// Integer vector and constant values of a single-component catalog relation.
struct RelationSystem {
    std::vector<BigInt> vector;
    std::vector<MpReal> values;
    std::vector<std::string> labels;
};

RelationSystem relation_system(const std::string& name, Bits P);

std::string result_json(const RelationResult& r);

}  // namespace polylad::relfind
