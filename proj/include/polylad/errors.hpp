#pragma once

#include <stdexcept>
#include <string>

namespace polylad {

// Base of every error the library throws. name() is the stable identifier
// surfaced by the CLI.
class Error : public std::runtime_error {
public:
    Error(std::string name, const std::string& what)
        : std::runtime_error(what), name_(std::move(name)) {}
    const std::string& name() const noexcept { return name_; }

private:
    std::string name_;
};

#define POLYLAD_ERROR(Cls)                                                   \
    class Cls : public Error {                                               \
    public:                                                                  \
        explicit Cls(const std::string& what) : Error(#Cls, what) {}         \
    }

POLYLAD_ERROR(DomainError);
POLYLAD_ERROR(PoleError);
POLYLAD_ERROR(IllConditionedError);
POLYLAD_ERROR(UnknownFormula);
POLYLAD_ERROR(UnsupportedArgument);
POLYLAD_ERROR(RankDeficient);
POLYLAD_ERROR(OverflowError);
POLYLAD_ERROR(GuardExhausted);
POLYLAD_ERROR(UndefinedOrder);
POLYLAD_ERROR(UnknownRelation);
POLYLAD_ERROR(ArgumentOutOfDomain);
POLYLAD_ERROR(DivergenceError);
POLYLAD_ERROR(PrecisionError);

#undef POLYLAD_ERROR

}  // namespace polylad
