#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <string>
#include <vector>

#include "relgw/quintic_surface.hpp"

using namespace relgw;

namespace {

WeightedPartition wp(const BasisPtr& r, const std::string& s) {
    return parse_partition(r, s);
}

}  // namespace

TEST_CASE("configuration filters") {
    BasisPtr c = ring_curve(3);
    auto f = [&](int g1, const std::string& mu) {
        return quintic_config_filter(g1, wp(c, mu));
    };
    CHECK(f(3, "{(4,\"Id\")}") == "dimension");
    CHECK(f(5, "{(1,\"pt\"),(1,\"pt\"),(1,\"pt\"),(1,\"pt\")}") == "linear-system-dim");
    CHECK(f(2, "{(1,\"pt\"),(1,\"Id\"),(1,\"Id\"),(1,\"Id\")}") == "genus-on-blowup");
    // two ramified parts / triple tangency / ramification with an odd weight
    CHECK(f(5, "{(2,\"pt\"),(2,\"pt\")}") == "tangency-vanishing");
    CHECK(f(5, "{(3,\"pt\"),(1,\"pt\")}") == "tangency-vanishing");
    CHECK(f(4, "{(2,\"pt\"),(1,\"b1\"),(1,\"a1\")}") == "tangency-vanishing");
    CHECK(f(3, "{(1,\"pt\"),(1,\"a1\"),(1,\"a2\"),(1,\"Id\")}") == "odd-pair-matching");
    // survivors
    CHECK_FALSE(f(3, "{(1,\"pt\"),(1,\"b1\"),(1,\"a1\"),(1,\"Id\")}").has_value());
    CHECK_FALSE(f(4, "{(2,\"pt\"),(1,\"pt\"),(1,\"Id\")}").has_value());
}

TEST_CASE("canonical representatives of relabeling orbits") {
    BasisPtr c = ring_curve(3);
    CHECK(quintic_canonicalize(wp(c, "{(1,\"pt\"),(1,\"b2\"),(1,\"a2\"),(1,\"Id\")}"))
              .str() == "{(1,\"pt\"),(1,\"b1\"),(1,\"a1\"),(1,\"Id\")}");
    CHECK(quintic_canonicalize(wp(c, "{(1,\"b3\"),(1,\"b2\"),(1,\"a3\"),(1,\"a2\")}"))
              .str() == "{(1,\"b2\"),(1,\"b1\"),(1,\"a2\"),(1,\"a1\")}");
    // already canonical inputs are fixed
    WeightedPartition rep = wp(c, "{(1,\"pt\"),(1,\"b1\"),(1,\"a1\"),(1,\"Id\")}");
    CHECK(quintic_canonicalize(rep).str() == rep.str());
}

TEST_CASE("convention sign") {
    BasisPtr c = ring_curve(3);
    CHECK(quintic_convention_sign(wp(c, "{}")) == 1);
    CHECK(quintic_convention_sign(wp(c, "{(1,\"pt\"),(1,\"pt\")}")) == 1);
    // storage order puts b1 before a1; the pair order wants (a1, b1)
    CHECK(quintic_convention_sign(wp(c, "{(1,\"b1\"),(1,\"a1\")}")) == -1);
    CHECK(quintic_convention_sign(wp(c, "{(1,\"b2\"),(1,\"b1\"),(1,\"a2\"),(1,\"a1\")}")) ==
          -1);
}

TEST_CASE("configuration census") {
    QuinticData d = quintic_data();
    CHECK(d.configs.size() == 9);
    REQUIRE(d.classes.size() == 5);
    CHECK(d.multiplicities == std::vector<long>{1, 3, 3, 1, 1});
    std::vector<std::pair<int, std::string>> expect = {
        {3, "{(1,\"pt\"),(1,\"pt\"),(1,\"Id\"),(1,\"Id\")}"},
        {3, "{(1,\"pt\"),(1,\"b1\"),(1,\"a1\"),(1,\"Id\")}"},
        {3, "{(1,\"b2\"),(1,\"b1\"),(1,\"a2\"),(1,\"a1\")}"},
        {4, "{(2,\"pt\"),(1,\"pt\"),(1,\"Id\")}"},
        {4, "{(2,\"Id\"),(1,\"pt\"),(1,\"pt\")}"},
    };
    for (size_t i = 0; i < d.classes.size(); ++i) {
        CHECK(d.classes[i].g1 == expect[i].first);
        CHECK(d.classes[i].mu.str() == expect[i].second);
    }
    // per-class convention signs
    std::vector<int> signs;
    for (const auto& cl : d.classes) signs.push_back(quintic_convention_sign(cl.mu));
    CHECK(signs == std::vector<int>{1, -1, -1, 1, 1});
    // keys on both sides
    CHECK(k3_pair_key(d, d.classes[0]).str() ==
          "Pair[g=3,beta=(1),omega=[],nu={(1,\"pt\"),(1,\"pt\"),(1,\"Id\"),(1,\"Id\")}]");
    CHECK(p_pair_key(d, d.classes[0]).beta.str() == "(1,0)");
}

TEST_CASE("system shape in the default mode") {
    QuinticSystem sys = build_quintic_system(false);
    REQUIRE(sys.equations.size() == 7);  // 5 quartic-side + blow-up + assembled
    const QuinticData& d = sys.data;

    const Equation& blow = sys.equations[5];
    CHECK(blow.principal.str() == "Pair[g=6,beta=(0,1),omega=[],nu={}]");
    CHECK(blow.principal_coeff == 1);
    REQUIRE(blow.oracle_terms.size() == 1);
    CHECK(blow.oracle_terms[0].ref == "Abs[g=6,beta=(0,1),omega=[]]");
    CHECK(*sys.oracles.get(blow.oracle_terms[0].ref) == 1);
    REQUIRE(blow.terms.size() == 5);
    for (size_t i = 0; i < 5; ++i) {
        CHECK(blow.terms[i].coeff.value == -Rat(d.multiplicities[i]));
        REQUIRE(blow.terms[i].coeff.slots.size() == 1);
        CHECK(blow.terms[i].coeff.slots[0].rfind("BC4[", 0) == 0);
        CHECK(blow.terms[i].key.str() == p_pair_key(d, d.classes[i]).str());
    }

    const Equation& total = sys.equations[6];
    CHECK(total.principal.str() == "Abs[g=6,beta=(1,0),omega=[]]");
    REQUIRE(total.terms.size() == 6);
    CHECK(total.terms[0].key.str() == blow.principal.str());
    CHECK(total.terms[0].coeff.value == 1);
    for (size_t i = 0; i < 5; ++i) {
        CHECK(total.terms[i + 1].coeff.value == Rat(d.multiplicities[i]));
        CHECK(total.terms[i + 1].key.str() == k3_pair_key(d, d.classes[i]).str());
    }

    // stored ruled-side pair values carry the storage-order sign
    CHECK(*sys.oracles.get(p_pair_key(d, d.classes[0]).str()) == 7);
    CHECK(*sys.oracles.get(p_pair_key(d, d.classes[1]).str()) == 3);   // -3 * -1
    CHECK(*sys.oracles.get(p_pair_key(d, d.classes[2]).str()) == -1);  // 1 * -1
}

TEST_CASE("computed report") {
    for (bool alt : {false, true}) {
        QuinticReport r = quintic_surface_compute(alt);
        CHECK(r.result == -1);
        CHECK(r.k3_values == std::vector<Rat>{-1, 1, -1, 0, 0});
        CHECK(r.p_values == std::vector<Rat>{7, -3, 1, 0, 0});
        CHECK(r.bc4_values == std::vector<Rat>{1, 1, 1});
        CHECK(r.text.find("cross-check (gauge-theoretic count): -1 -> match") !=
              std::string::npos);
        CHECK(r.text.find("1 + 1*(-1 - 7)*1 + 3*(1 - -3)*1 + 3*(-1 - 1)*1 = -1") !=
              std::string::npos);
        CHECK(r.text.find("result = -1") != std::string::npos);
    }
}

TEST_CASE("alternate mode with user-supplied absolute values") {
    // collect the ruled-side absolute references and their pair-ordered defaults
    QuinticSystem base = build_quintic_system(true);
    const QuinticData& d = base.data;
    REQUIRE(base.equations.size() == 12);  // 5 quartic + 5 ruled + blow-up + total
    OracleTable user;
    std::string two_id_ref;
    // pair-ordered user values equal to the defaults must reproduce the result
    for (size_t i = 0; i < d.classes.size(); ++i) {
        const auto& c = d.classes[i];
        Rat v = 0;
        if (c.g1 == 3) v = c.mu.id_count() == 2 ? 7 : (c.mu.id_count() == 1 ? 4 : 2);
        // locate this class's absolute reference via its equation's oracle term
        for (const auto& ot : base.equations[5 + i].oracle_terms)
            if (ot.ref.rfind("Abs[", 0) == 0) {
                user.set(ot.ref, v, "pair-ordered user value");
                if (c.g1 == 3 && c.mu.id_count() == 2) two_id_ref = ot.ref;
            }
    }
    REQUIRE(!two_id_ref.empty());

    QuinticSystem same = build_quintic_system(true, &user);
    SolveResult rs = solve(same.equations, same.oracles);
    verify(same.equations, rs, same.oracles);
    CHECK(rs.values.at("Abs[g=6,beta=(1,0),omega=[]]") == -1);

    // perturbing one absolute moves the final count
    user.set(two_id_ref, 8, "perturbed");
    QuinticSystem pert = build_quintic_system(true, &user);
    SolveResult rp = solve(pert.equations, pert.oracles);
    verify(pert.equations, rp, pert.oracles);
    CHECK(rp.values.at("Abs[g=6,beta=(1,0),omega=[]]") != -1);
}
