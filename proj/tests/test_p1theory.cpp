#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <map>
#include <numeric>
#include <vector>

#include "relgw/p1theory.hpp"

using namespace relgw;

namespace {

using Perm = std::vector<int>;

Perm compose(const Perm& a, const Perm& b) {  // (a*b)(x) = a(b(x))
    Perm r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[(size_t)b[i]];
    return r;
}

bool is_identity(const Perm& p) {
    for (size_t i = 0; i < p.size(); ++i)
        if (p[i] != (int)i) return false;
    return true;
}

PlainPartition cycle_type(const Perm& p) {
    std::vector<bool> seen(p.size(), false);
    std::vector<long> parts;
    for (size_t i = 0; i < p.size(); ++i) {
        if (seen[i]) continue;
        long len = 0;
        for (size_t j = i; !seen[j]; j = (size_t)p[j]) {
            seen[j] = true;
            ++len;
        }
        parts.push_back(len);
    }
    return PlainPartition::make(parts);
}

std::map<PlainPartition, std::vector<Perm>> classes_of(long d) {
    Perm p((size_t)d);
    std::iota(p.begin(), p.end(), 0);
    std::map<PlainPartition, std::vector<Perm>> by_type;
    do {
        by_type[cycle_type(p)].push_back(p);
    } while (std::next_permutation(p.begin(), p.end()));
    return by_type;
}

// The subgroup generated by the tuple acts transitively on {0..d-1}.
bool transitive(const std::vector<Perm>& tuple, long d) {
    if (d <= 1) return true;
    std::vector<int> root((size_t)d);
    std::iota(root.begin(), root.end(), 0);
    std::function<int(int)> find = [&](int x) {
        while (root[(size_t)x] != x) x = root[(size_t)x] = root[(size_t)root[(size_t)x]];
        return x;
    };
    for (const auto& s : tuple)
        for (int i = 0; i < d; ++i) {
            int a = find(i), b = find(s[(size_t)i]);
            if (a != b) root[(size_t)a] = b;
        }
    int r = find(0);
    for (int i = 1; i < d; ++i)
        if (find(i) != r) return false;
    return true;
}

struct BruteCounts {
    long all = 0;
    long trans = 0;
};

BruteCounts brute_tuples(long d, const std::vector<PlainPartition>& profiles) {
    auto by_type = classes_of(d);
    std::vector<const std::vector<Perm>*> pools;
    for (const auto& pr : profiles) {
        auto it = by_type.find(pr);
        if (it == by_type.end()) return {};
        pools.push_back(&it->second);
    }
    BruteCounts out;
    std::vector<Perm> tuple(profiles.size());
    std::function<void(size_t, const Perm&)> rec = [&](size_t i, const Perm& prod) {
        if (i == pools.size()) {
            if (!is_identity(prod)) return;
            ++out.all;
            if (transitive(tuple, d)) ++out.trans;
            return;
        }
        for (const auto& s : *pools[i]) {
            tuple[i] = s;
            rec(i + 1, compose(prod, s));
        }
    };
    Perm id((size_t)d);
    std::iota(id.begin(), id.end(), 0);
    rec(0, id);
    return out;
}

long fact(long n) {
    long f = 1;
    for (long i = 2; i <= n; ++i) f *= i;
    return f;
}

// Riemann-Hurwitz genus for a degree-d cover with the given profiles.
std::optional<long> rh_genus(long d, const std::vector<PlainPartition>& profiles) {
    long chi = 2 * d;
    for (const auto& p : profiles) chi -= d - p.length();
    if (chi % 2 != 0) return std::nullopt;
    return (2 - chi) / 2;
}

}  // namespace

TEST_CASE("plain partitions") {
    PlainPartition p = PlainPartition::make({1, 3, 1});
    CHECK(p.str() == "(3,1,1)");
    CHECK(p.n() == 5);
    CHECK(p.z() == 6);  // 3*1*1 * 1! * 2!
    CHECK(partitions_of(5).size() == 7);
    CHECK(partitions_of(8).size() == 22);
    // z identity: sum over classes of n!/z = n!  <=> sum of class sizes
    for (long n = 1; n <= 8; ++n) {
        Rat total = 0;
        for (const auto& rho : partitions_of(n)) total += Rat(fact(n)) / rho.z();
        CHECK(total == fact(n));
    }
}

TEST_CASE("character spot values") {
    auto P = [](std::vector<long> v) { return PlainPartition::make(std::move(v)); };
    CHECK(character(P({2, 1}), P({3})) == -1);
    CHECK(character(P({2, 1}), P({1, 1, 1})) == 2);
    CHECK(character(P({3}), P({1, 1, 1})) == 1);
    // trivial and sign representations
    for (long n = 1; n <= 6; ++n)
        for (const auto& rho : partitions_of(n)) {
            CHECK(character(PlainPartition::make({n}), rho) == 1);
            std::vector<long> ones((size_t)n, 1);
            long sgn = 1;
            for (long part : rho.parts)
                if (part % 2 == 0) sgn = -sgn;
            CHECK(character(PlainPartition::make(ones), rho) == sgn);
        }
}

TEST_CASE("character table orthogonality up to n = 8") {
    for (long n = 1; n <= 8; ++n) {
        CharacterTable t = character_table(n);
        CHECK(t.classes.size() == partitions_of(n).size());
        long nf = fact(n);
        // class sizes: |C_rho| = n!/z(rho)
        long size_sum = 0;
        for (const auto& rho : t.classes) {
            CHECK(Rat(t.class_sizes.at(rho)) == Rat(nf) / rho.z());
            size_sum += t.class_sizes.at(rho);
        }
        CHECK(size_sum == nf);
        // dimensions and the Burnside identity
        long dim_sq = 0;
        for (const auto& lam : t.classes) {
            std::vector<long> ones((size_t)n, 1);
            CHECK(t.dimensions.at(lam) ==
                  t.values.at({lam, PlainPartition::make(ones)}));
            CHECK(t.dimensions.at(lam) > 0);
            dim_sq += t.dimensions.at(lam) * t.dimensions.at(lam);
        }
        CHECK(dim_sq == nf);
        // row orthogonality
        for (const auto& la : t.classes)
            for (const auto& lb : t.classes) {
                long s = 0;
                for (const auto& rho : t.classes)
                    s += t.class_sizes.at(rho) * t.values.at({la, rho}) *
                         t.values.at({lb, rho});
                CHECK(s == (la == lb ? nf : 0));
            }
        // column orthogonality
        for (const auto& ra : t.classes)
            for (const auto& rb : t.classes) {
                long s = 0;
                for (const auto& lam : t.classes)
                    s += t.values.at({lam, ra}) * t.values.at({lam, rb});
                CHECK(Rat(s) ==
                      (ra == rb ? Rat(nf) / Rat(t.class_sizes.at(ra)) : Rat(0)));
            }
    }
}

TEST_CASE("tuple counts against brute force") {
    auto P = [](std::vector<long> v) { return PlainPartition::make(std::move(v)); };
    struct Case {
        long d;
        std::vector<PlainPartition> profiles;
    };
    std::vector<Case> cases = {
        {2, {P({2}), P({2})}},
        {2, {P({2}), P({2}), P({2}), P({2})}},
        {3, {P({2, 1}), P({2, 1}), P({2, 1}), P({2, 1})}},
        {3, {P({3}), P({3})}},
        {3, {P({3}), P({3}), P({3})}},
        {3, {P({2, 1}), P({2, 1}), P({3})}},
        {4, {P({2, 1, 1}), P({2, 1, 1}), P({3, 1})}},
        {4, {P({4}), P({4})}},
        {4, {P({2, 2}), P({2, 2}), P({2, 1, 1}), P({2, 1, 1})}},
        {4, {P({3, 1}), P({3, 1}), P({2, 1, 1})}},
        {5, {P({2, 1, 1, 1}), P({2, 1, 1, 1}), P({5})}},
        {5, {P({5}), P({5})}},
        {5, {P({3, 2}), P({2, 1, 1, 1}), P({2, 1, 1, 1})}},
        {5, {P({2, 1, 1, 1}), P({2, 1, 1, 1}), P({2, 1, 1, 1}), P({2, 1, 1, 1})}},
    };
    for (const auto& c : cases) {
        BruteCounts bc = brute_tuples(c.d, c.profiles);
        CHECK(frobenius_tuple_count(c.d, c.profiles) == bc.all);
        CHECK(transitive_tuple_count(c.d, c.profiles) == bc.trans);
        // cover counts weighted by 1/|Aut| are tuple counts over d!
        auto g = rh_genus(c.d, c.profiles);
        if (g && *g >= 0) {
            CHECK(hurwitz_number(*g, c.d, c.profiles, true) ==
                  Rat(bc.trans) / fact(c.d));
            CHECK(hurwitz_number(*g, c.d, c.profiles, false) ==
                  Rat(bc.all) / fact(c.d));
            // any other genus gives zero
            CHECK(hurwitz_number(*g + 1, c.d, c.profiles, true) == 0);
        }
    }
}

TEST_CASE("classical simple hurwitz values") {
    auto simple = [](long d, int count) {
        std::vector<long> prof = {2};
        for (long i = 2; i < d; ++i) prof.push_back(1);
        return std::vector<PlainPartition>((size_t)count, PlainPartition::make(prof));
    };
    // genus-0 simple covers: d=2 -> 1/2, d=3 -> 4, d=4 -> 120
    CHECK(hurwitz_number(0, 2, simple(2, 2), true) == Rat(1, 2));
    CHECK(hurwitz_number(0, 3, simple(3, 4), true) == 4);
    CHECK(hurwitz_number(0, 4, simple(4, 6), true) == 120);
    // genus-1, d=2
    CHECK(hurwitz_number(1, 2, simple(2, 4), true) == Rat(1, 2));
}

TEST_CASE("fiber constants") {
    BasisPtr pt = ring_point();
    // principal slot: prod 1/(m_i - 1)! times n^{#(1,Id)}
    WeightedPartition nu = parse_partition(pt, "{(3,\"Id\"),(1,\"Id\"),(1,\"Id\")}");
    FiberConstant f = fiber_constant(Relation1PrincipalSlot{nu, 5});
    REQUIRE(std::holds_alternative<Rat>(f));
    CHECK(std::get<Rat>(f) == Rat(25, 2));
    // totally ramified cap
    FiberConstant c = fiber_constant(TotallyRamifiedCapSlot{4, Rat(3)});
    REQUIRE(std::holds_alternative<Rat>(c));
    CHECK(std::get<Rat>(c) == Rat(1, 8));
    CHECK_THROWS(fiber_constant(TotallyRamifiedCapSlot{0, Rat(1)}));
    // anything else stays symbolic
    FiberConstant u = fiber_constant(GenericSlot{"higher-genus-cap"});
    REQUIRE(std::holds_alternative<Unresolved>(u));
    CHECK(std::get<Unresolved>(u).name == "higher-genus-cap");
}
