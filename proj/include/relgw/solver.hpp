#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "relgw/degeneration.hpp"

namespace relgw {

// Known values (named fiber constants, localization inputs, absolute
// invariants) with a provenance note per entry.
struct OracleTable {
    struct Entry {
        Rat value;
        std::string provenance;
    };
    std::map<std::string, Entry> entries;

    void set(const std::string& ref, const Rat& value, const std::string& provenance);
    std::optional<Rat> get(const std::string& ref) const;
};

struct CycleError : std::runtime_error {
    std::string principal, blocker;
    CycleError(const std::string& p, const std::string& b);
};

struct MissingOracleError : std::runtime_error {
    std::string ref;
    explicit MissingOracleError(const std::string& r);
};

struct ZeroPrincipalCoefficientError : std::runtime_error {
    std::string principal;
    explicit ZeroPrincipalCoefficientError(const std::string& p);
};

struct SolveResult {
    std::map<std::string, Rat> values;                         // by principal key
    std::map<std::string, std::vector<std::string>> derivations;  // per principal
    std::vector<std::string> order;                            // solve order
};

// Solves the triangular system: each equation determines its principal from
// already-solved principals and oracle values.  Ready principals are solved
// in serialized-key order.  A symbolic slot coefficient multiplying a value
// known to be zero contributes zero; otherwise the slot must be an oracle.
SolveResult solve(const std::vector<Equation>& eqs, const OracleTable& oracles);

// Recomputes every residual exactly; throws on any nonzero residual.
void verify(const std::vector<Equation>& eqs, const SolveResult& result,
            const OracleTable& oracles);

// Human-readable derivation of one solved principal.
std::string explain(const SolveResult& result, const std::string& principal);

}  // namespace relgw
