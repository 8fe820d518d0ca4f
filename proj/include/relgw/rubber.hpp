#pragma once

#include <optional>
#include <string>
#include <vector>

#include "relgw/degeneration.hpp"

namespace relgw {

// A rational multiple (possibly carrying resolved "val:<type II key>" slots)
// of a rubber invariant; a term with no key is fully reduced.
struct RubberTerm {
    TermCoeff coeff;
    std::optional<InvariantKey> key;

    std::string str() const;
};

struct RubberExpr {
    std::vector<RubberTerm> terms;

    bool resolved() const;
    std::string str() const;
};

struct RubberContext {
    BundleGeometry geo;
    ModelPtr model;
    std::string ample_form = "H";   // intersection form for int_{pi_* beta} H
    std::string ample_label = "H";  // degree-2 label on the base
};

enum class RubberStrategy { FiberClass, NonFiber };

// Dilaton: strips one tau_1(1) insertion; the bracket equals
// (2g-2+n+l(mu)+l(nu)) times the stripped bracket, n counting the remaining
// non-relative markings.
RubberExpr dilaton(const RubberContext& ctx, const InvariantKey& key);
// key = 1/factor * (key + tau_1(1)); requires a positive dilaton factor.
RubberExpr inverse_dilaton(const RubberContext& ctx, const InvariantKey& key);

// Modified divisor equation expanding the bracket with tau_0(pi^* H) at
// omega[idx]: the divisor multiple of the stripped bracket, descendent
// corrections, and (for psi >= 1) relative-weight corrections at psi-1.
RubberExpr divisor(const RubberContext& ctx, const InvariantKey& key, size_t idx);
// key = 1/(int H) * (tau_0(H)-extended key - corrections).
RubberExpr inverse_divisor(const RubberContext& ctx, const InvariantKey& key);

// Topological recursion at the marking omega[idx] (psi >= 1): trades one
// cotangent power for a c1(L) twist plus splitting terms whose first factor
// rigidifies to a type II value slot.
RubberExpr trr_step(const RubberContext& ctx, const InvariantKey& key, size_t idx);

// psi = 0: the bracket equals the rigid type II invariant with the class at
// omega[idx] multiplied by [D0].
RubberExpr rigidify(const RubberContext& ctx, const InvariantKey& key, size_t idx);

struct TraceEntry {
    std::string rule;
    std::string subject;
    std::string measure_before;
    std::string measure_after;  // maximal measure among produced rubber terms
    int produced = 0;
};

struct ReduceResult {
    RubberExpr expr;  // fully reduced
    std::vector<TraceEntry> trace;
};

// Termination measure (psi power, tau_1(1)-free flag, total descendent
// exponent), ordered lexicographically.
std::string rubber_measure(const InvariantKey& key);

ReduceResult reduce(const RubberContext& ctx, const InvariantKey& key,
                    RubberStrategy strategy);

}  // namespace relgw
