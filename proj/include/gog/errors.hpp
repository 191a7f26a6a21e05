#pragma once

#include <stdexcept>
#include <string>

namespace gog {

struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

struct ElementKindMismatch : Error {
    explicit ElementKindMismatch(const std::string& what = "element does not belong to this group kind")
        : Error(what) {}
};

struct BudgetExceeded : Error {
    int partial_radius;
    explicit BudgetExceeded(int partial, const std::string& what = "enumeration budget exceeded")
        : Error(what), partial_radius(partial) {}
};

struct NotInSubgroup : Error {
    explicit NotInSubgroup(const std::string& what = "element not in subgroup") : Error(what) {}
};

struct OracleUnknown : Error {
    explicit OracleUnknown(const std::string& what = "membership oracle exhausted its search bound")
        : Error(what) {}
};

struct ContextMismatch : Error {
    explicit ContextMismatch(const std::string& what = "operands live in different group contexts")
        : Error(what) {}
};

struct SupportOutsideDomain : Error {
    explicit SupportOutsideDomain(const std::string& what = "function support leaves the normal-set domain")
        : Error(what) {}
};

struct NotABasis : Error {
    explicit NotABasis(const std::string& what = "vectors do not form an integer basis") : Error(what) {}
};

struct ZeroVector : Error {
    explicit ZeroVector(const std::string& what = "zero vector not allowed") : Error(what) {}
};

struct NotHyperbolic : Error {
    explicit NotHyperbolic(const std::string& what = "matrix is not hyperbolic (|trace| <= 2)") : Error(what) {}
};

struct TooFewSamples : Error {
    explicit TooFewSamples(const std::string& what = "need at least 5 samples to classify growth")
        : Error(what) {}
};

struct ConfigParse : Error {
    explicit ConfigParse(const std::string& what) : Error("config: " + what) {}
};

struct UnknownScenario : Error {
    explicit UnknownScenario(const std::string& id) : Error("unknown scenario: " + id) {}
};

} // namespace gog
