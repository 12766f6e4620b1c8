#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace pcdp {

using Int = std::int64_t;

/// Outcome of an independent verification run.  `values` carries the
/// recomputed parameter tuple; `witness` describes the first violation
/// found and is nonempty exactly when `ok` is false.
struct Certificate {
    std::string kind;
    bool ok = false;
    std::string witness;
    std::vector<std::pair<std::string, Int>> values;
    std::string block_sizes;  // exponential notation, e.g. "[3^7]", when applicable

    Int value(const std::string& name) const {
        for (const auto& [k, v] : values)
            if (k == name) return v;
        throw std::out_of_range("certificate has no value '" + name + "'");
    }
};

inline Certificate pass_certificate(std::string kind) {
    Certificate c;
    c.kind = std::move(kind);
    c.ok = true;
    return c;
}

inline Certificate fail_certificate(std::string kind, std::string witness) {
    Certificate c;
    c.kind = std::move(kind);
    c.ok = false;
    c.witness = std::move(witness);
    return c;
}

/// Thrown when a construction emits an object that fails its own verifier.
class VerificationError : public std::runtime_error {
public:
    explicit VerificationError(const std::string& what) : std::runtime_error(what) {}
    VerificationError(const std::string& what, Certificate cert)
        : std::runtime_error(what + ": " + cert.witness), cert_(std::move(cert)) {}
    const Certificate& certificate() const { return cert_; }

private:
    Certificate cert_;
};

/// Thrown by constructions whose required ingredient (an externally cited
/// matrix) is neither in the catalog nor reachable by search within budget.
class IngredientGapError : public std::runtime_error {
public:
    IngredientGapError(std::string missing, const std::string& what)
        : std::runtime_error(what), missing_(std::move(missing)) {}
    const std::string& missing() const { return missing_; }

private:
    std::string missing_;
};

}  // namespace pcdp
