#pragma once

#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "relgw/partitions.hpp"
#include "relgw/rational.hpp"

namespace relgw {

// Plain integer partition in weakly decreasing order.
struct PlainPartition {
    std::vector<long> parts;

    static PlainPartition make(std::vector<long> parts);
    long n() const;
    int length() const { return static_cast<int>(parts.size()); }
    // Order of the centralizer: prod parts * prod (multiplicity!)
    Rat z() const;
    std::string str() const;  // (3,1,1)

    bool operator==(const PlainPartition&) const = default;
    bool operator<(const PlainPartition& o) const { return parts < o.parts; }
};

std::vector<PlainPartition> partitions_of(long n);

// Irreducible S_n character chi^lambda(rho) by the Murnaghan-Nakayama rule.
long character(const PlainPartition& lambda, const PlainPartition& rho);

struct CharacterTable {
    long n;
    std::vector<PlainPartition> classes;  // also indexes the irreps
    std::map<PlainPartition, long> class_sizes;
    std::map<PlainPartition, long> dimensions;
    std::map<std::pair<PlainPartition, PlainPartition>, long> values;
};

CharacterTable character_table(long n);

// Counts of branched covers of P^1 with the given ramification profiles,
// weighted by 1/|Aut|; g must match Riemann-Hurwitz or the count is 0.
Rat hurwitz_number(long g, long d, const std::vector<PlainPartition>& profiles,
                   bool connected);

// Raw Frobenius count of tuples in the given classes multiplying to the
// identity (not divided by d!, no transitivity).
Rat frobenius_tuple_count(long d, const std::vector<PlainPartition>& profiles);
// Same restricted to transitive tuples, by inclusion-exclusion on the orbit
// of the first letter.
Rat transitive_tuple_count(long d, const std::vector<PlainPartition>& profiles);

// Fiber-constant slots fed in from the degeneration/rubber modules.  Only the
// genus-0 Hurwitz-reachable shapes resolve; everything else stays symbolic.
struct Relation1PrincipalSlot {
    WeightedPartition nu;
    long n_inf;
};
struct TotallyRamifiedCapSlot {
    long d;                 // single part d over D0, one tau_{d-1}([Dinf].delta)
    Rat divisor_factor;     // divisor-equation prefactor carried by the caller
};
struct GenericSlot {
    std::string name;       // opaque descriptor; includes genus >= 1 shapes
};
using SlotDescriptor = std::variant<Relation1PrincipalSlot, TotallyRamifiedCapSlot, GenericSlot>;

struct Unresolved {
    std::string name;
};
using FiberConstant = std::variant<Rat, Unresolved>;

FiberConstant fiber_constant(const SlotDescriptor& slot);

}  // namespace relgw
