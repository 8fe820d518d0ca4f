#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "relgw/partitions.hpp"

namespace relgw {

// A curve-class lattice with declared effective-cone generators and
// intersection linear forms against the named divisors.  positive_form is a
// linear form strictly positive on every generator; it bounds the effectivity
// search.
struct CurveClassModel {
    std::string name;
    int rank = 1;
    std::vector<std::vector<long>> cone_generators;
    std::map<std::string, std::vector<long>> intersection_forms;
    std::vector<long> positive_form;
    // Coordinates of the P^1-fiber class (zero vector when the model has no
    // bundle structure); pi_*(beta) = 0 iff beta is a fiber multiple.
    std::vector<long> fiber_coords;

    void validate() const;
};

using ModelPtr = std::shared_ptr<const CurveClassModel>;

struct CurveClass {
    ModelPtr model;
    std::vector<long> coords;

    static CurveClass make(ModelPtr m, std::vector<long> coords);
    static CurveClass zero(ModelPtr m);

    long intersect(const std::string& divisor) const;
    bool is_zero() const;
    // Multiple of the fiber class (pi_* = 0); the zero class counts.
    bool is_fiber_multiple() const;
    std::string str() const;  // (1,0)

    bool operator==(const CurveClass& o) const { return coords == o.coords; }
    bool operator!=(const CurveClass& o) const { return !(*this == o); }
};

CurveClass operator+(const CurveClass& a, const CurveClass& b);
CurveClass operator-(const CurveClass& a, const CurveClass& b);

// Membership in the nonnegative integer span of the cone generators.
bool effective(const CurveClass& beta);
// Strict ordering: a < b iff b - a is a nonzero effective class.
bool class_less(const CurveClass& a, const CurveClass& b);
// All effective beta' with beta - beta' effective (includes 0 and beta).
std::vector<CurveClass> effective_classes_below(const CurveClass& beta);

struct Insertion {
    int k = 0;           // descendent exponent of tau_k
    std::string cls;     // class label (bundle labels, or i*(...) on pairs)

    bool operator==(const Insertion&) const = default;
    std::string str() const;  // tau0([D0]*d)
};

std::vector<Insertion> sort_insertions(std::vector<Insertion> omega);

enum class Species { TypeI_D0, TypeI_Dinf, TypeII, Rubber, Absolute, RelativePair };

std::string species_name(Species s);

struct InvariantKey {
    Species species = Species::Absolute;
    int g = 0;
    CurveClass beta;
    std::vector<Insertion> omega;  // non-distinguished insertions, sorted
    std::optional<Insertion> distinguished;
    std::optional<WeightedPartition> mu;  // D0 side (left)
    std::optional<WeightedPartition> nu;  // Dinf side (right) / pair divisor
    int psi_inf_power = 0;                // rubber only
    bool connected = true;

    std::string str() const;
    void validate() const;  // species slot discipline + tangency sums

    bool operator==(const InvariantKey& o) const;
    bool operator<(const InvariantKey& o) const { return str() < o.str(); }
};

// Reparses the serialization grammar, e.g.
// TypeII[g=3,beta=(1,0),mu={...},dist=tau0([D0]*d),omega=[...],nu={...}].
InvariantKey parse_key(const ModelPtr& model, const BasisPtr& ring, const std::string& text);
// Partition weights resolved against a separate divisor ring.
InvariantKey parse_key(const ModelPtr& model, const BasisPtr& ring,
                       const BasisPtr& divisor_ring, const std::string& text);

enum class OrderResult { Lower, NotLower };

// Conditions (1)-(7) on distinguished type II invariants: beta' < beta; then
// g' < g; then |omega'| < |omega|; then deg(mu') > deg(mu); then
// deg(nu') > deg(nu); then deg(delta') > deg(delta); then nu' lex-greater nu.
// Each later condition applies only at exact equality of all earlier data.
OrderResult circ_less_typeII(const InvariantKey& a, const InvariantKey& b,
                             const BasisPtr& delta_ring);

// Conditions (1)-(5) on relative-pair invariants: beta, g, |omega|,
// deg(nu') > deg(nu), nu' lex-greater nu.
OrderResult circ_less_pair(const InvariantKey& a, const InvariantKey& b);

// Primary induction pair: beta' < beta, or beta' = beta and g' < g.
bool primary_less(const InvariantKey& a, const InvariantKey& b);

struct Bounds {
    int max_genus = 2;
    int max_descendent = 1;
    // Insertion labels are drawn from this ring (the bundle/total space).
    BasisPtr ring;
    // Partition weights live here (the relative divisor); defaults to ring.
    BasisPtr divisor_ring;
    // Divisor names used for tangency sums.
    std::string left_divisor = "D0";
    std::string right_divisor = "Dinf";
    // Insertion class labels available for omega.
    std::vector<std::string> insertion_labels;
    // Maximal number of non-distinguished insertions.
    int max_omega = 1;
};

// All admissible keys of the same species within the bounds.
std::vector<InvariantKey> enumerate_keys(Species species, const CurveClass& beta_cap,
                                         const Bounds& bounds);

// The complete set of keys strictly lower than key within bounds.
std::vector<InvariantKey> downset(const InvariantKey& key, const Bounds& bounds);

// All weighted partitions of total size n with weights from the ring
// (no repeated identical odd parts).
std::vector<WeightedPartition> enumerate_partitions(const BasisPtr& ring, long n);

}  // namespace relgw
