#pragma once

#include <functional>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "relgw/invariants.hpp"
#include "relgw/p1theory.hpp"

namespace relgw {

// A rational coefficient times a (possibly empty) product of named symbolic
// fiber-constant slots.
struct TermCoeff {
    Rat value = 1;
    std::vector<std::string> slots;

    bool is_pure() const { return slots.empty(); }
    bool is_zero() const { return value == 0; }
    std::string str() const;
    TermCoeff operator*(const TermCoeff& o) const;
};

struct EqTerm {
    TermCoeff coeff;
    InvariantKey key;
    int family = 0;  // relation-2 summand family tag; 0 when untagged
};

struct EqOracleTerm {
    TermCoeff coeff;
    std::string ref;
};

// principal_coeff * principal = sum(terms) + sum(oracle_terms)
struct Equation {
    InvariantKey principal;
    Rat principal_coeff = 1;
    std::vector<EqTerm> terms;
    std::vector<EqOracleTerm> oracle_terms;
    std::vector<std::string> diagnostics;

    std::string str() const;  // line-delimited dump record
};

std::string dump_equations(const std::vector<Equation>& eqs);
std::vector<Equation> parse_equations(const ModelPtr& model, const BasisPtr& ring,
                                      const BasisPtr& divisor_ring, const std::string& text);

// Geometry for equations on the bundle Y = P(L + O_X) relative to D0/Dinf.
struct DegenerationContext {
    BundleGeometry geo;     // Y over X
    ModelPtr model;         // intersection forms "D0", "Dinf" (and ample "H")
    BasisPtr divisor_ring;  // weights of mu/nu/eta (= geo.base)
    std::string ample_form = "H";
    int max_omega_subsets = 1 << 12;  // safety cap
};

// C = prod_j 1/(nu_j - 1)! * n_inf^{Id(nu)}
Rat coefficient_C(const WeightedPartition& nu, long n_inf);

struct SplittingTerm {
    int g1 = 0, g2 = 0;
    CurveClass beta1, beta2;
    WeightedPartition eta;
    std::vector<int> omega_to_side2;  // indices of insertions on side 2
    std::string component_shape;      // "connected|connected" or "trivial"
    enum class Case { Case1, Case2, Mixed, Trivial } case_tag = Case::Mixed;
};

// All splittings g = g1 + g2 + l(eta) - 1, beta1 + beta2 = beta,
// sum(eta) = int_{beta1}[Dinf] = int_{beta2}[D0], with a connected total
// domain.  For beta = 0 only the trivial splitting is returned.
std::vector<SplittingTerm> enumerate_splittings(const InvariantKey& key,
                                                const DegenerationContext& ctx);

// C * R = TypeI - sum C_{Rt,R} Rt - sum C_{mu',omega'} TypeI' - nonprincipal.
Equation relation1(const InvariantKey& R, const DegenerationContext& ctx);

// Type I invariant <mu| tau0([D0] d) omega prod tau_{nu_j-1}([Dinf] delta_j)>
// rewritten through the ample class H; delta_label indexes the base ring.
Equation relation2(const DegenerationContext& ctx, int g, const CurveClass& beta,
                   const WeightedPartition& mu, const WeightedPartition& nu,
                   const std::vector<Insertion>& omega, const std::string& delta_label);
Equation relation2prime(const DegenerationContext& ctx, int g, const CurveClass& beta,
                        const WeightedPartition& mu, const WeightedPartition& nu,
                        const std::vector<Insertion>& omega);

// Relative pair (V, W) systems through the associated absolute invariants.
struct PairContext {
    BasisPtr w_ring;  // divisor cohomology; partitions weighted here
    ModelPtr model;   // with a "W" intersection form
    // With divisor normalization, tau_0(iota_* 1) insertions are removed from
    // the associated absolute and both sides are divided by (int_beta[W])^Id.
    bool normalize_divisor = true;
    // Candidate eta filter (named pruning rules); keep when true.
    std::function<bool(const WeightedPartition&, const InvariantKey&)> eta_filter;
    // Shape-class canonicalization (e.g. odd-pair relabeling); identity when
    // unset.  Generated eta terms are grouped by image.
    std::function<WeightedPartition(const WeightedPartition&)> canonicalize;
    // Non-principal contributions (lower primary pair), already signed for
    // the right side.  Defaults to a single symbolic reference.
    std::function<std::vector<EqOracleTerm>(const InvariantKey&)> nonprincipal;
};

// Coefficient of the lower pair term with relative partition eta inside the
// degeneration of the associated absolute of `key` (divisor-normalized).
// Unresolved component shapes surface as a slot named after (eta, key).
TermCoeff pair_term_coefficient(const InvariantKey& key, const WeightedPartition& eta,
                                const PairContext& ctx);

std::vector<Equation> theorem2_system(const std::vector<InvariantKey>& pair_keys,
                                      const PairContext& ctx);

// Corollary-1 simple-class check in a hypersurface-pair context of ambient
// dimension r: plain labels must be simple; iota_*(x) is simple when x is
// simple or deg(x) = r - 2 (then deg iota_*(x) = r).
bool simple_class_filter(const InvariantKey& key, int r, const BasisPtr& w_ring,
                         const std::set<std::string>& simple_labels);

}  // namespace relgw
