#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "relgw/invariants.hpp"

using namespace relgw;

namespace {

ModelPtr skew_model() {
    auto m = std::make_shared<CurveClassModel>();
    m->name = "skew";
    m->rank = 2;
    m->cone_generators = {{2, 1}, {1, 2}};
    m->positive_form = {1, 1};
    m->intersection_forms["D"] = {1, 0};
    m->validate();
    return m;
}

ModelPtr line_model() {
    auto m = std::make_shared<CurveClassModel>();
    m->name = "line";
    m->rank = 1;
    m->cone_generators = {{1}};
    m->positive_form = {1};
    m->intersection_forms["D0"] = {1};
    m->intersection_forms["Dinf"] = {1};
    m->intersection_forms["H"] = {1};
    m->intersection_forms["W"] = {1};
    m->validate();
    return m;
}

// Independent effectivity oracle: search nonnegative generator combinations.
bool brute_effective(const CurveClass& v) {
    const auto& gens = v.model->cone_generators;
    for (long a = 0; a <= 20; ++a)
        for (long b = 0; b <= 20; ++b) {
            bool ok = true;
            for (size_t i = 0; i < v.coords.size(); ++i)
                if (a * gens[0][i] + b * gens[1][i] != v.coords[i]) { ok = false; break; }
            if (ok) return true;
        }
    return false;
}

}  // namespace

TEST_CASE("effective cone membership against brute force") {
    ModelPtr m = skew_model();
    for (long x = -4; x <= 10; ++x)
        for (long y = -4; y <= 10; ++y) {
            CurveClass v = CurveClass::make(m, {x, y});
            CHECK(effective(v) == brute_effective(v));
        }
    // class_less is strict effectivity of the difference
    CurveClass a = CurveClass::make(m, {2, 1});
    CurveClass b = CurveClass::make(m, {3, 3});
    CHECK(class_less(a, b));       // b - a = (1,2), a generator
    CHECK_FALSE(class_less(b, a));
    CHECK_FALSE(class_less(a, a));  // strict

    // effective_classes_below agrees with filtering the box
    CurveClass top = CurveClass::make(m, {4, 5});
    auto below = effective_classes_below(top);
    std::set<std::string> got;
    for (const auto& c : below) got.insert(c.str());
    std::set<std::string> expect;
    for (long x = 0; x <= 4; ++x)
        for (long y = 0; y <= 5; ++y) {
            CurveClass c = CurveClass::make(m, {x, y});
            CurveClass rest = top - c;
            if (brute_effective(c) && brute_effective(rest)) expect.insert(c.str());
        }
    CHECK(got == expect);
    CHECK(got.count("(0,0)") == 1);
    CHECK(got.count(top.str()) == 1);
}

TEST_CASE("intersection forms and fiber classes") {
    ModelPtr m = skew_model();
    CurveClass v = CurveClass::make(m, {3, 7});
    CHECK(v.intersect("D") == 3);
    CHECK_THROWS(v.intersect("absent"));

    auto fib = std::make_shared<CurveClassModel>();
    fib->name = "ruled";
    fib->rank = 2;
    fib->cone_generators = {{1, 0}, {0, 1}};
    fib->positive_form = {1, 1};
    fib->intersection_forms["D0"] = {1, 0};
    fib->fiber_coords = {0, 1};
    fib->validate();
    CHECK(CurveClass::make(fib, {0, 3}).is_fiber_multiple());
    CHECK(CurveClass::zero(fib).is_fiber_multiple());
    CHECK_FALSE(CurveClass::make(fib, {1, 3}).is_fiber_multiple());
}

TEST_CASE("key serialization round trips") {
    ModelPtr m = line_model();
    BasisPtr p1 = ring_projective(1);
    BundleGeometry geo = build_bundle_basis(p1, CohClass::unit(p1, "h"));
    BasisPtr y = geo.bundle;

    std::vector<std::string> texts = {
        "Abs[g=2,beta=(3),omega=[tau0(h),tau1([D0])]]",
        "TypeI0[g=1,beta=(2),mu={(2,\"h\")},omega=[]]",
        "TypeIinf[g=0,beta=(2),omega=[tau0(h)],nu={(1,\"h\"),(1,\"Id\")}]",
        "TypeII[g=1,beta=(2),mu={(2,\"Id\")},dist=tau1(h*[D0]),omega=[],nu={(1,\"h\"),(1,\"Id\")}]",
        "Rubber[g=1,beta=(2),mu={(2,\"Id\")},omega=[],nu={(2,\"h\")},psi=1]",
        "Pair[g=0,beta=(1),omega=[tau0(h)],nu={(1,\"pt\")}]",
    };
    BasisPtr w = ring_curve(1);
    for (const auto& t : texts) {
        InvariantKey k = (t.rfind("Pair", 0) == 0) ? parse_key(m, w, t)
                                                   : parse_key(m, y, p1, t);
        k.validate();
        CHECK(k.str() == t);
        InvariantKey back = (t.rfind("Pair", 0) == 0)
                                ? parse_key(m, w, k.str())
                                : parse_key(m, y, p1, k.str());
        CHECK(back == k);
    }
    // insertions are kept sorted
    InvariantKey k = parse_key(m, y, p1, "Abs[g=0,beta=(1),omega=[tau1(h),tau0(h)]]");
    CHECK(k.omega == sort_insertions(k.omega));

    // disconnected flag survives
    InvariantKey d = parse_key(m, w, "Pair[g=0,beta=(2),omega=[],nu={(2,\"Id\")},disconnected]");
    CHECK_FALSE(d.connected);
    CHECK(parse_key(m, w, d.str()) == d);
}

TEST_CASE("validation rejects malformed keys") {
    ModelPtr m = line_model();
    BasisPtr p1 = ring_projective(1);
    BundleGeometry geo = build_bundle_basis(p1, CohClass::unit(p1, "h"));
    BasisPtr y = geo.bundle;
    BasisPtr w = ring_curve(1);

    // absolute invariants carry no relative data
    InvariantKey bad;
    bad.species = Species::Absolute;
    bad.g = 0;
    bad.beta = CurveClass::make(m, {1});
    bad.mu = WeightedPartition::make(p1, {{1, 0}});
    CHECK_THROWS(bad.validate());

    // tangency sum must match beta . Dinf
    CHECK_THROWS(parse_key(m, w, "Pair[g=0,beta=(2),omega=[],nu={(1,\"Id\")}]").validate());
    CHECK_NOTHROW(parse_key(m, w, "Pair[g=0,beta=(2),omega=[],nu={(2,\"Id\")}]").validate());
    // type II: mu against D0 and nu against Dinf
    CHECK_THROWS(parse_key(m, y, p1,
        "TypeII[g=0,beta=(2),mu={(1,\"Id\")},dist=tau0(h),omega=[],nu={(2,\"Id\")}]")
        .validate());
    // rubber psi power must be nonnegative
    CHECK_THROWS(parse_key(m, y, p1,
        "Rubber[g=0,beta=(1),mu={(1,\"Id\")},omega=[],nu={(1,\"Id\")},psi=-1]")
        .validate());
}

TEST_CASE("type II order is a sound strict order") {
    ModelPtr m = line_model();
    BasisPtr p1 = ring_projective(1);
    BundleGeometry geo = build_bundle_basis(p1, CohClass::unit(p1, "h"));
    BasisPtr y = geo.bundle;

    Bounds bounds;
    bounds.max_genus = 2;
    bounds.max_descendent = 1;
    bounds.max_omega = 1;
    bounds.ring = geo.bundle;
    bounds.divisor_ring = p1;
    bounds.insertion_labels = {"h", "[D0]"};

    CurveClass cap = CurveClass::make(m, {3});
    auto keys = enumerate_keys(Species::TypeII, cap, bounds);
    REQUIRE(keys.size() >= 500);

    // irreflexive
    for (const auto& k : keys)
        CHECK(circ_less_typeII(k, k, y) == OrderResult::NotLower);

    // asymmetric on all pairs of a deterministic subsample
    std::vector<InvariantKey> sub;
    for (size_t i = 0; i < keys.size(); i += 7) sub.push_back(keys[i]);
    for (const auto& a : sub)
        for (const auto& b : sub)
            if (circ_less_typeII(a, b, y) == OrderResult::Lower)
                CHECK(circ_less_typeII(b, a, y) == OrderResult::NotLower);

    // transitive on random triples
    std::mt19937 rng(12345);
    std::uniform_int_distribution<size_t> pick(0, keys.size() - 1);
    for (int t = 0; t < 20000; ++t) {
        const auto& a = keys[pick(rng)];
        const auto& b = keys[pick(rng)];
        const auto& c = keys[pick(rng)];
        if (circ_less_typeII(a, b, y) == OrderResult::Lower &&
            circ_less_typeII(b, c, y) == OrderResult::Lower)
            CHECK(circ_less_typeII(a, c, y) == OrderResult::Lower);
    }
}

TEST_CASE("downset against brute-force filtering") {
    ModelPtr m = line_model();
    BasisPtr p1 = ring_projective(1);
    BundleGeometry geo = build_bundle_basis(p1, CohClass::unit(p1, "h"));

    Bounds bounds;
    bounds.max_genus = 2;
    bounds.max_descendent = 1;
    bounds.max_omega = 1;
    bounds.ring = geo.bundle;
    bounds.divisor_ring = p1;
    bounds.insertion_labels = {"h", "[D0]"};

    InvariantKey key = parse_key(m, geo.bundle, p1,
        "TypeII[g=2,beta=(2),mu={(2,\"Id\")},dist=tau0(h),omega=[],nu={(1,\"h\"),(1,\"Id\")}]");
    key.validate();

    auto got = downset(key, bounds);
    std::set<std::string> got_set;
    for (const auto& k : got) got_set.insert(k.str());
    CHECK(got_set.size() == got.size());  // no duplicates

    std::set<std::string> expect;
    for (const auto& k : enumerate_keys(Species::TypeII, key.beta, bounds))
        if (circ_less_typeII(k, key, bounds.ring) == OrderResult::Lower) expect.insert(k.str());
    CHECK(got_set == expect);
    CHECK(expect.size() > 0);
}

TEST_CASE("relative pair order") {
    ModelPtr m = line_model();
    BasisPtr w = ring_curve(1);

    Bounds bounds;
    bounds.max_genus = 1;
    bounds.max_descendent = 1;
    bounds.max_omega = 1;
    bounds.ring = w;
    bounds.divisor_ring = w;
    bounds.right_divisor = "W";
    bounds.insertion_labels = {"pt"};
    auto keys = enumerate_keys(Species::RelativePair, CurveClass::make(m, {3}), bounds);
    REQUIRE(keys.size() >= 50);

    for (const auto& k : keys)
        CHECK(circ_less_pair(k, k) == OrderResult::NotLower);
    for (const auto& a : keys)
        for (const auto& b : keys)
            if (circ_less_pair(a, b) == OrderResult::Lower)
                CHECK(circ_less_pair(b, a) == OrderResult::NotLower);

    // condition ladder spot checks
    auto K = [&](const std::string& t) { return parse_key(m, w, t); };
    // smaller curve class
    CHECK(circ_less_pair(K("Pair[g=5,beta=(1),omega=[],nu={(1,\"Id\")}]"),
                         K("Pair[g=0,beta=(2),omega=[],nu={(2,\"Id\")}]")) ==
          OrderResult::Lower);
    // same class, smaller genus
    CHECK(circ_less_pair(K("Pair[g=0,beta=(1),omega=[],nu={(1,\"Id\")}]"),
                         K("Pair[g=1,beta=(1),omega=[],nu={(1,\"Id\")}]")) ==
          OrderResult::Lower);
    // same class and genus, fewer insertions
    CHECK(circ_less_pair(K("Pair[g=0,beta=(1),omega=[],nu={(1,\"Id\")}]"),
                         K("Pair[g=0,beta=(1),omega=[tau0(pt)],nu={(1,\"Id\")}]")) ==
          OrderResult::Lower);
    // deeper tangency class wins (higher partition degree is lower)
    CHECK(circ_less_pair(K("Pair[g=0,beta=(1),omega=[],nu={(1,\"pt\")}]"),
                         K("Pair[g=0,beta=(1),omega=[],nu={(1,\"Id\")}]")) ==
          OrderResult::Lower);
    // lex-greater partition is lower
    CHECK(circ_less_pair(K("Pair[g=0,beta=(2),omega=[],nu={(2,\"Id\")}]"),
                         K("Pair[g=0,beta=(2),omega=[],nu={(1,\"Id\"),(1,\"Id\")}]")) ==
          OrderResult::Lower);

    // primary induction pair
    CHECK(primary_less(K("Pair[g=9,beta=(1),omega=[],nu={(1,\"Id\")}]"),
                       K("Pair[g=0,beta=(2),omega=[],nu={(2,\"Id\")}]")));
    CHECK(primary_less(K("Pair[g=0,beta=(2),omega=[],nu={(2,\"Id\")}]"),
                       K("Pair[g=1,beta=(2),omega=[],nu={(2,\"Id\")}]")));
    CHECK_FALSE(primary_less(K("Pair[g=1,beta=(2),omega=[],nu={(2,\"Id\")}]"),
                             K("Pair[g=1,beta=(2),omega=[],nu={(1,\"Id\"),(1,\"Id\")}]")));
}

TEST_CASE("partition enumeration over a ring") {
    BasisPtr p1 = ring_projective(1);
    auto parts3 = enumerate_partitions(p1, 3);
    std::set<std::string> seen;
    for (const auto& p : parts3) {
        CHECK(p.size() == 3);
        CHECK(seen.insert(p.str()).second);  // no duplicates
    }
    // plain shapes of 3: (3),(2,1),(1,1,1); each part carries one of 2 labels
    // (3):2, (2,1):4, (1,1,1): multisets of 3 labels from 2 -> 4; total 10
    CHECK(parts3.size() == 10);

    // odd ring: repeated identical odd parts are excluded
    BasisPtr c = ring_curve(1);
    for (const auto& p : enumerate_partitions(c, 4)) {
        for (size_t i = 0; i + 1 < p.parts.size(); ++i)
            CHECK_FALSE((c->odd(p.parts[i].weight) && p.parts[i] == p.parts[i + 1]));
    }
}
