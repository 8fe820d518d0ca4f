#include "relgw/partitions.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>
#include <stdexcept>

namespace relgw {

std::vector<WeightedPart> standard_order(const BasisPtr&, std::vector<WeightedPart> parts) {
    std::sort(parts.begin(), parts.end(), [](const WeightedPart& a, const WeightedPart& b) {
        if (a.mult != b.mult) return a.mult > b.mult;
        return a.weight > b.weight;
    });
    return parts;
}

WeightedPartition WeightedPartition::make(BasisPtr ctx, std::vector<WeightedPart> parts) {
    for (const auto& p : parts) {
        if (p.mult < 1) throw std::invalid_argument("part multiplicity must be >= 1");
        if (p.weight < 0 || p.weight >= (int)ctx->size())
            throw std::invalid_argument("part weight out of basis range");
    }
    parts = standard_order(ctx, std::move(parts));
    for (size_t i = 1; i < parts.size(); ++i)
        if (parts[i] == parts[i - 1] && ctx->odd(parts[i].weight))
            throw std::invalid_argument("repeated identical odd-weight part");
    WeightedPartition mu;
    mu.context = std::move(ctx);
    mu.parts = std::move(parts);
    return mu;
}

long WeightedPartition::size() const {
    long s = 0;
    for (const auto& p : parts) s += p.mult;
    return s;
}

int WeightedPartition::deg() const {
    int d = 0;
    for (const auto& p : parts) d += context->deg(p.weight);
    return d;
}

int WeightedPartition::id_count() const {
    int n = 0;
    for (const auto& p : parts)
        if (p.mult == 1 && p.weight == context->identity) ++n;
    return n;
}

Rat WeightedPartition::aut_order() const {
    std::map<std::pair<long, int>, long> counts;
    for (const auto& p : parts) counts[{p.mult, p.weight}]++;
    Rat a = 1;
    for (const auto& [_, c] : counts) a *= factorial(c);
    return a;
}

Rat WeightedPartition::zee() const {
    Rat z = aut_order();
    for (const auto& p : parts) z *= p.mult;
    return z;
}

std::string WeightedPartition::str() const {
    std::ostringstream os;
    os << "{";
    for (size_t i = 0; i < parts.size(); ++i) {
        if (i) os << ",";
        os << "(" << parts[i].mult << ",\"" << context->labels[(size_t)parts[i].weight]
           << "\")";
    }
    os << "}";
    return os.str();
}

SignedPartition dual(const WeightedPartition& mu) {
    const auto& b = mu.context;
    int sign = 1;
    std::vector<WeightedPart> out;
    // Dualize weights; odd parts keep their relative order here, the
    // reordering sign is picked up below.
    std::vector<int> odd_positions_before;
    for (const auto& p : mu.parts) {
        auto d = dual_signed_label(b, p.weight);
        if (!d) throw std::runtime_error("weight dual is not +-(a single label)");
        sign *= d->sign;
        out.push_back({p.mult, d->index});
    }
    // Reordering sign: parity of the permutation restricted to odd-degree
    // weights needed to re-canonicalize.
    auto sorted = standard_order(b, out);
    // Count inversions among odd parts between the two orders.
    std::vector<WeightedPart> odd_before, odd_after;
    for (const auto& p : out)
        if (b->odd(p.weight)) odd_before.push_back(p);
    for (const auto& p : sorted)
        if (b->odd(p.weight)) odd_after.push_back(p);
    // Permutation parity via selection sort on distinguishable entries.
    std::vector<WeightedPart> work = odd_before;
    for (size_t i = 0; i < odd_after.size(); ++i) {
        size_t j = i;
        while (j < work.size() && !(work[j] == odd_after[i])) ++j;
        if (j >= work.size()) throw std::runtime_error("internal dual reorder failure");
        while (j > i) {
            std::swap(work[j], work[j - 1]);
            sign = -sign;
            --j;
        }
    }
    return SignedPartition{WeightedPartition::make(b, std::move(sorted)), sign};
}

SizeCmp size_compare(const BasisPtr& ctx, const WeightedPart& a, const WeightedPart& b) {
    if (a.mult != b.mult) return a.mult > b.mult ? SizeCmp::Greater : SizeCmp::Less;
    int da = ctx->deg(a.weight), db = ctx->deg(b.weight);
    if (da != db) return da > db ? SizeCmp::Greater : SizeCmp::Less;
    return a.weight == b.weight ? SizeCmp::Equal : SizeCmp::EqualSize;
}

namespace {
// Sort for the lexicographic comparison: decreasing (mult, deg), with the
// weight index as a deterministic tiebreak among size-equal parts.
std::vector<WeightedPart> size_sorted(const WeightedPartition& mu) {
    std::vector<WeightedPart> v = mu.parts;
    const auto& b = mu.context;
    std::sort(v.begin(), v.end(), [&](const WeightedPart& x, const WeightedPart& y) {
        if (x.mult != y.mult) return x.mult > y.mult;
        if (b->deg(x.weight) != b->deg(y.weight)) return b->deg(x.weight) > b->deg(y.weight);
        return x.weight > y.weight;
    });
    return v;
}
}  // namespace

LexCmp lex_compare(const WeightedPartition& a, const WeightedPartition& b) {
    if (a.context != b.context) throw std::runtime_error("lex_compare across rings");
    auto va = size_sorted(a), vb = size_sorted(b);
    for (size_t i = 0; i < std::min(va.size(), vb.size()); ++i) {
        switch (size_compare(a.context, va[i], vb[i])) {
            case SizeCmp::Greater: return LexCmp::Greater;
            case SizeCmp::Less: return LexCmp::Less;
            case SizeCmp::EqualSize: return LexCmp::Incomparable;
            case SizeCmp::Equal: break;
        }
    }
    if (va.size() == vb.size()) return LexCmp::Equal;
    return va.size() > vb.size() ? LexCmp::Greater : LexCmp::Less;
}

namespace {
struct Cursor {
    const std::string& s;
    size_t i = 0;
    void skip_ws() {
        while (i < s.size() && std::isspace((unsigned char)s[i])) ++i;
    }
    char peek() {
        skip_ws();
        if (i >= s.size()) throw std::invalid_argument("unexpected end of partition text");
        return s[i];
    }
    void expect(char c) {
        if (peek() != c)
            throw std::invalid_argument(std::string("expected '") + c + "' in partition text");
        ++i;
    }
    bool try_consume(char c) {
        skip_ws();
        if (i < s.size() && s[i] == c) {
            ++i;
            return true;
        }
        return false;
    }
    long integer() {
        skip_ws();
        size_t start = i;
        if (i < s.size() && (s[i] == '-' || s[i] == '+')) ++i;
        while (i < s.size() && std::isdigit((unsigned char)s[i])) ++i;
        if (i == start) throw std::invalid_argument("expected integer in partition text");
        return std::stol(s.substr(start, i - start));
    }
    std::string quoted() {
        expect('"');
        size_t start = i;
        while (i < s.size() && s[i] != '"') ++i;
        if (i >= s.size()) throw std::invalid_argument("unterminated label in partition text");
        std::string out = s.substr(start, i - start);
        ++i;
        return out;
    }
};
}  // namespace

WeightedPartition parse_partition(const BasisPtr& ctx, const std::string& text) {
    Cursor c{text};
    c.expect('{');
    std::vector<WeightedPart> parts;
    if (!c.try_consume('}')) {
        do {
            c.expect('(');
            long m = c.integer();
            c.expect(',');
            std::string label = c.quoted();
            c.expect(')');
            parts.push_back({m, ctx->index(label)});
        } while (c.try_consume(','));
        c.expect('}');
    }
    c.skip_ws();
    if (c.i != text.size()) throw std::invalid_argument("trailing text after partition");
    return WeightedPartition::make(ctx, std::move(parts));
}

}  // namespace relgw
