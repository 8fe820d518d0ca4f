#pragma once

#include <optional>
#include <string>
#include <vector>

#include "relgw/degeneration.hpp"
#include "relgw/solver.hpp"

namespace relgw {

// Degeneration of a genus-6 class on the quintic surface through the quartic
// K3 and the plane blow-up, split along a genus-3 quartic curve.

struct QuinticConfig {
    int g1 = 0;
    WeightedPartition mu;  // weighted on the quartic curve
};

// Named pruning rules for configurations (g1, mu) with the divisor class
// pulled back once (tangency budget 4).  Returns the name of the rejecting
// filter, or nullopt when the configuration survives.
std::optional<std::string> quintic_config_filter(int g1, const WeightedPartition& mu);

// Relabels the odd dual pairs in order of first appearance, so partitions in
// one relabeling orbit share a representative.
WeightedPartition quintic_canonicalize(const WeightedPartition& mu);

// Sign relating the storage-order bracket normalization (partitions kept in
// standard order) to the odd-pair-ordered normalization in which each dual
// pair is written (a_i, b_i) with pairs ascending.  Values published in
// reports use the pair-ordered normalization.
int quintic_convention_sign(const WeightedPartition& mu);

struct QuinticData {
    BasisPtr curve;       // genus-3 quartic divisor curve
    ModelPtr k3_model;    // rank-1 classes on the K3 side
    ModelPtr p_model;     // rank-2 classes on the ruled side
    ModelPtr total_model; // rank-2 bookkeeping for the assembled equations
    std::vector<QuinticConfig> configs;          // all surviving configurations
    std::vector<QuinticConfig> classes;          // canonical representatives
    std::vector<long> multiplicities;            // per representative
};

QuinticData quintic_data();

InvariantKey k3_pair_key(const QuinticData& d, const QuinticConfig& c);
InvariantKey p_pair_key(const QuinticData& d, const QuinticConfig& c);

struct QuinticSystem {
    QuinticData data;
    std::vector<Equation> equations;
    OracleTable oracles;
    bool alternate_p_mode = false;
};

// Builds the full equation system: the K3-side pair system, the ruled-side
// system (alternate mode only; by default the ruled-side pair values are
// oracles), the blow-up equation, and the assembled total-space equation.
// In alternate mode, p_absolutes can override the stored ruled-side absolute
// values (keys are the associated-absolute references).
QuinticSystem build_quintic_system(bool alternate_p_mode,
                                   const OracleTable* p_absolutes = nullptr);

struct QuinticReport {
    Rat result;
    SolveResult solution;
    // Pair-ordered-normalization values per representative class.
    std::vector<Rat> k3_values;   // relative invariants of the quartic side
    std::vector<Rat> p_values;    // relative invariants of the ruled side
    std::vector<Rat> bc4_values;  // genus-0 blow-up side values
    std::string text;
};

// Solves and verifies the system; result is the genus-6 invariant of the
// quintic surface.  The report cross-checks the stored gauge-theoretic value.
QuinticReport quintic_surface_compute(bool alternate_p_mode = false);

}  // namespace relgw
