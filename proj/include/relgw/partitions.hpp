#pragma once

#include <string>
#include <vector>

#include "relgw/cohomology.hpp"
#include "relgw/rational.hpp"

namespace relgw {

// One relative condition: ramification multiplicity and a cohomology weight
// on the relative divisor, stored as a basis index.
struct WeightedPart {
    long mult = 1;
    int weight = 0;

    bool operator==(const WeightedPart&) const = default;
};

// Unordered multiset of weighted parts kept in canonical standard order:
// decreasing multiplicity, then decreasing weight index.  Repeated identical
// odd-weight parts are rejected (the bracket would vanish by
// anticommutativity; we hard-error instead of silently zeroing).
struct WeightedPartition {
    BasisPtr context;
    std::vector<WeightedPart> parts;

    static WeightedPartition make(BasisPtr ctx, std::vector<WeightedPart> parts);
    static WeightedPartition empty(BasisPtr ctx) { return make(std::move(ctx), {}); }

    long size() const;     // sum of multiplicities
    int length() const { return static_cast<int>(parts.size()); }
    int deg() const;       // sum of weight degrees
    int id_count() const;  // number of (1, Id) parts
    Rat aut_order() const;
    Rat zee() const;

    std::string str() const;  // {(2,"d1"),(1,"Id")}

    bool operator==(const WeightedPartition& o) const { return parts == o.parts; }
    bool operator!=(const WeightedPartition& o) const { return !(*this == o); }
};

// Poincare-dualized partition with the overall sign carried separately
// (dualization signs on odd weights times the odd-part reordering sign).
struct SignedPartition {
    WeightedPartition partition;
    int sign = 1;
};

std::vector<WeightedPart> standard_order(const BasisPtr& ctx, std::vector<WeightedPart> parts);

SignedPartition dual(const WeightedPartition& mu);

enum class SizeCmp { Greater, Less, EqualSize, Equal };
// Size relation on single parts: by multiplicity, then weight degree.
// EqualSize: same multiplicity and degree but distinct weight labels.
SizeCmp size_compare(const BasisPtr& ctx, const WeightedPart& a, const WeightedPart& b);

enum class LexCmp { Greater, Less, Equal, Incomparable };
// Lexicographic comparison after size-sorting; the first size-distinguishable
// pair decides; a deciding pair that is EqualSize-distinct gives Incomparable.
// When one list of parts is a proper prefix of the other, the longer one is
// lex-greater.
LexCmp lex_compare(const WeightedPartition& a, const WeightedPartition& b);

// Parses the text syntax {(2,"d1"),(1,"Id")}; round-trips with str().
WeightedPartition parse_partition(const BasisPtr& ctx, const std::string& text);

}  // namespace relgw
