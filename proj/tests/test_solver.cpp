#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <string>
#include <vector>

#include "relgw/solver.hpp"

using namespace relgw;

namespace {

ModelPtr point_model() {
    auto m = std::make_shared<CurveClassModel>();
    m->name = "pt";
    m->rank = 1;
    m->cone_generators = {{1}};
    m->positive_form = {1};
    m->validate();
    return m;
}

InvariantKey abs_key(const ModelPtr& m, int g, long beta) {
    InvariantKey k;
    k.species = Species::Absolute;
    k.g = g;
    k.beta = CurveClass::make(m, {beta});
    return k;
}

}  // namespace

TEST_CASE("single equation with an oracle term") {
    ModelPtr m = point_model();
    Equation e;
    e.principal = abs_key(m, 0, 1);
    e.principal_coeff = Rat(5, 2);
    e.oracle_terms.push_back({TermCoeff{1, {}}, "cap"});

    OracleTable t;
    t.set("cap", 5, "hand value");
    SolveResult r = solve({e}, t);
    CHECK(r.values.at(e.principal.str()) == 2);
    CHECK(r.order == std::vector<std::string>{e.principal.str()});
    CHECK_NOTHROW(verify({e}, r, t));

    std::string ex = explain(r, e.principal.str());
    CHECK(ex.find(e.principal.str()) != std::string::npos);
    CHECK(ex.find("oracle") != std::string::npos);
    CHECK(ex.find("x = 2") != std::string::npos);
    CHECK_THROWS(explain(r, "no-such-principal"));
}

TEST_CASE("triangular chain and solve order") {
    ModelPtr m = point_model();
    InvariantKey a = abs_key(m, 0, 1), b = abs_key(m, 1, 1), c = abs_key(m, 2, 1);
    OracleTable t;
    t.set("seed", 3, "hand value");

    // c depends on b, b on a, a on the seed oracle; submitted out of order
    Equation ea;
    ea.principal = a;
    ea.oracle_terms.push_back({TermCoeff{2, {}}, "seed"});  // a = 6
    Equation eb;
    eb.principal = b;
    eb.principal_coeff = 3;
    eb.terms.push_back({TermCoeff{1, {}}, a});  // b = 2
    Equation ec;
    ec.principal = c;
    ec.terms.push_back({TermCoeff{1, {}}, a});
    ec.terms.push_back({TermCoeff{-2, {}}, b});  // c = 6 - 4 = 2

    SolveResult r = solve({ec, eb, ea}, t);
    CHECK(r.values.at(a.str()) == 6);
    CHECK(r.values.at(b.str()) == 2);
    CHECK(r.values.at(c.str()) == 2);
    CHECK(r.order == std::vector<std::string>{a.str(), b.str(), c.str()});
    CHECK_NOTHROW(verify({ea, eb, ec}, r, t));

    // independent ready equations are taken in serialized-key order
    Equation fa, fb, fc;
    fa.principal = c;
    fa.oracle_terms.push_back({TermCoeff{1, {}}, "seed"});
    fb.principal = a;
    fb.oracle_terms.push_back({TermCoeff{1, {}}, "seed"});
    fc.principal = b;
    fc.oracle_terms.push_back({TermCoeff{1, {}}, "seed"});
    SolveResult r2 = solve({fa, fb, fc}, t);
    std::vector<std::string> expect = {a.str(), b.str(), c.str()};
    std::sort(expect.begin(), expect.end());
    CHECK(r2.order == expect);
}

TEST_CASE("error paths") {
    ModelPtr m = point_model();
    InvariantKey a = abs_key(m, 0, 1), b = abs_key(m, 1, 1);
    OracleTable t;

    // x = 1 + x: self-reference is a cycle
    Equation self;
    self.principal = a;
    self.terms.push_back({TermCoeff{1, {}}, a});
    CHECK_THROWS_AS(solve({self}, t), CycleError);

    // two-step cycle a <-> b
    Equation ca, cb;
    ca.principal = a;
    ca.terms.push_back({TermCoeff{1, {}}, b});
    cb.principal = b;
    cb.terms.push_back({TermCoeff{1, {}}, a});
    try {
        solve({ca, cb}, t);
        FAIL("expected CycleError");
    } catch (const CycleError& e) {
        CHECK(((e.principal == a.str() && e.blocker == b.str()) ||
               (e.principal == b.str() && e.blocker == a.str())));
    }

    // reference that is neither a principal nor an oracle
    Equation miss;
    miss.principal = a;
    miss.terms.push_back({TermCoeff{1, {}}, b});
    try {
        solve({miss}, t);
        FAIL("expected MissingOracleError");
    } catch (const MissingOracleError& e) {
        CHECK(e.ref == b.str());
    }

    // missing named oracle
    Equation morc;
    morc.principal = a;
    morc.oracle_terms.push_back({TermCoeff{1, {}}, "absent"});
    CHECK_THROWS_AS(solve({morc}, t), MissingOracleError);

    // zero principal coefficient
    Equation zc;
    zc.principal = a;
    zc.principal_coeff = 0;
    zc.oracle_terms.push_back({TermCoeff{1, {}}, "seed"});
    OracleTable ts;
    ts.set("seed", 1, "hand value");
    CHECK_THROWS_AS(solve({zc}, ts), ZeroPrincipalCoefficientError);

    // duplicate principals
    Equation d1, d2;
    d1.principal = a;
    d1.oracle_terms.push_back({TermCoeff{1, {}}, "seed"});
    d2 = d1;
    CHECK_THROWS(solve({d1, d2}, ts));
}

TEST_CASE("symbolic slot times zero contributes zero") {
    ModelPtr m = point_model();
    InvariantKey a = abs_key(m, 0, 1), b = abs_key(m, 1, 1);
    OracleTable t;
    t.set(b.str(), 0, "vanishing input");
    t.set("seed", 7, "hand value");

    // the slot "mystery" has no oracle value, but multiplies a zero
    Equation e;
    e.principal = a;
    e.terms.push_back({TermCoeff{3, {"mystery"}}, b});
    e.oracle_terms.push_back({TermCoeff{1, {}}, "seed"});
    SolveResult r = solve({e}, t);
    CHECK(r.values.at(a.str()) == 7);
    CHECK_NOTHROW(verify({e}, r, t));

    // with a nonzero base value the slot must resolve
    OracleTable t2;
    t2.set(b.str(), 4, "nonzero input");
    t2.set("seed", 7, "hand value");
    try {
        solve({e}, t2);
        FAIL("expected MissingOracleError");
    } catch (const MissingOracleError& err) {
        CHECK(err.ref == "mystery");
    }
    t2.set("mystery", Rat(1, 2), "hand value");
    SolveResult r2 = solve({e}, t2);
    CHECK(r2.values.at(a.str()) == 13);  // 3 * 1/2 * 4 + 7
}

TEST_CASE("verify rejects perturbed solutions") {
    ModelPtr m = point_model();
    InvariantKey a = abs_key(m, 0, 1);
    OracleTable t;
    t.set("seed", 4, "hand value");
    Equation e;
    e.principal = a;
    e.principal_coeff = 2;
    e.oracle_terms.push_back({TermCoeff{1, {}}, "seed"});
    SolveResult r = solve({e}, t);
    CHECK(r.values.at(a.str()) == 2);
    r.values[a.str()] = 3;
    CHECK_THROWS(verify({e}, r, t));
}
