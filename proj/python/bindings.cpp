// Python bindings: string-level access to the main engine operations.
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <map>
#include <string>
#include <vector>

#include "relgw/cohomology.hpp"
#include "relgw/degeneration.hpp"
#include "relgw/invariants.hpp"
#include "relgw/p1theory.hpp"
#include "relgw/partitions.hpp"
#include "relgw/quintic_surface.hpp"
#include "relgw/rubber.hpp"
#include "relgw/schemes.hpp"
#include "relgw/solver.hpp"

namespace py = pybind11;
using namespace relgw;

namespace {

BasisPtr resolve_ring(const std::string& spec) {
    if (spec == "point") return ring_point();
    if (spec.size() > 1 && spec[0] == 'P' &&
        spec.find_first_not_of("0123456789", 1) == std::string::npos)
        return ring_projective(std::stoi(spec.substr(1)));
    if (spec.rfind("curve", 0) == 0 && spec.size() > 5)
        return ring_curve(std::stoi(spec.substr(5)));
    if (spec.rfind("k3:", 0) == 0) {
        size_t c = spec.find(':', 3);
        if (c == std::string::npos) throw std::runtime_error("bad k3 ring spec: " + spec);
        return ring_k3_model(std::stoi(spec.substr(3, c - 3)),
                             std::stoi(spec.substr(c + 1)));
    }
    return ring_from_json_text(spec);  // inline JSON text
}

ModelPtr make_model(int rank, const std::map<std::string, std::vector<long>>& forms) {
    auto m = std::make_shared<CurveClassModel>();
    m->name = "py";
    m->rank = rank;
    for (int i = 0; i < rank; ++i) {
        std::vector<long> gen((size_t)rank, 0);
        gen[(size_t)i] = 1;
        m->cone_generators.push_back(std::move(gen));
    }
    m->positive_form.assign((size_t)rank, 1);
    for (const auto& [name, v] : forms) m->intersection_forms[name] = v;
    m->validate();
    return m;
}

}  // namespace

PYBIND11_MODULE(_relgw, mod) {
    mod.doc() = "exact-rational engine for relative-invariant recursions";

    // partitions -----------------------------------------------------------
    mod.def("canonical_partition", [](const std::string& text, const std::string& ring) {
        return parse_partition(resolve_ring(ring), text).str();
    }, py::arg("partition"), py::arg("ring"));
    mod.def("zee", [](const std::string& text, const std::string& ring) {
        return rat_str(parse_partition(resolve_ring(ring), text).zee());
    }, py::arg("partition"), py::arg("ring"));
    mod.def("aut_order", [](const std::string& text, const std::string& ring) {
        return rat_str(parse_partition(resolve_ring(ring), text).aut_order());
    }, py::arg("partition"), py::arg("ring"));
    mod.def("dual_partition", [](const std::string& text, const std::string& ring) {
        SignedPartition d = dual(parse_partition(resolve_ring(ring), text));
        return py::make_tuple(d.sign, d.partition.str());
    }, py::arg("partition"), py::arg("ring"));
    mod.def("lex_compare", [](const std::string& a, const std::string& b,
                              const std::string& ring) {
        BasisPtr r = resolve_ring(ring);
        switch (relgw::lex_compare(parse_partition(r, a), parse_partition(r, b))) {
            case LexCmp::Greater: return "Greater";
            case LexCmp::Less: return "Less";
            case LexCmp::Equal: return "Equal";
            default: return "Incomparable";
        }
    }, py::arg("a"), py::arg("b"), py::arg("ring"));

    // p1 theory ------------------------------------------------------------
    mod.def("character", [](const std::vector<long>& lam, const std::vector<long>& rho) {
        return character(PlainPartition::make(lam), PlainPartition::make(rho));
    }, py::arg("lam"), py::arg("rho"));
    mod.def("hurwitz_number", [](long g, long d, const std::vector<std::vector<long>>& profiles,
                                 bool connected) {
        std::vector<PlainPartition> ps;
        for (const auto& p : profiles) ps.push_back(PlainPartition::make(p));
        return rat_str(hurwitz_number(g, d, ps, connected));
    }, py::arg("g"), py::arg("d"), py::arg("profiles"), py::arg("connected") = true);

    // orders ---------------------------------------------------------------
    mod.def("circ_less_pair", [](const std::string& a, const std::string& b,
                                 const std::string& ring, int rank,
                                 const std::map<std::string, std::vector<long>>& forms) {
        BasisPtr w = resolve_ring(ring);
        ModelPtr m = make_model(rank, forms);
        return circ_less_pair(parse_key(m, w, a), parse_key(m, w, b)) == OrderResult::Lower;
    }, py::arg("a"), py::arg("b"), py::arg("ring"), py::arg("rank") = 1,
       py::arg("forms") = std::map<std::string, std::vector<long>>{{"W", {1}}});

    // pair systems / solving ------------------------------------------------
    mod.def("theorem2_dump", [](const std::vector<std::string>& keys, const std::string& ring,
                                int rank,
                                const std::map<std::string, std::vector<long>>& forms,
                                bool normalize) {
        PairContext ctx;
        ctx.w_ring = resolve_ring(ring);
        ctx.model = make_model(rank, forms);
        ctx.normalize_divisor = normalize;
        std::vector<InvariantKey> ks;
        for (const auto& k : keys) ks.push_back(parse_key(ctx.model, ctx.w_ring, k));
        return dump_equations(theorem2_system(ks, ctx));
    }, py::arg("keys"), py::arg("ring"), py::arg("rank") = 1,
       py::arg("forms") = std::map<std::string, std::vector<long>>{{"W", {1}}},
       py::arg("normalize") = true);
    mod.def("solve_dump", [](const std::string& dump, const std::map<std::string, std::string>& oracles,
                             const std::string& ring, int rank,
                             const std::map<std::string, std::vector<long>>& forms) {
        BasisPtr r = resolve_ring(ring);
        ModelPtr m = make_model(rank, forms);
        auto eqs = parse_equations(m, r, r, dump);
        OracleTable table;
        for (const auto& [ref, v] : oracles) table.set(ref, parse_rat(v), "user");
        SolveResult sol = solve(eqs, table);
        verify(eqs, sol, table);
        std::map<std::string, std::string> out;
        for (const auto& [k, v] : sol.values) out[k] = rat_str(v);
        return out;
    }, py::arg("dump"), py::arg("oracles"), py::arg("ring"), py::arg("rank") = 1,
       py::arg("forms") = std::map<std::string, std::vector<long>>{{"W", {1}}});

    // schemes ---------------------------------------------------------------
    mod.def("quintic_endpoints", [] { return canonical_endpoints(quintic_scheme()); });
    mod.def("hypersurface_endpoints", [](int d, int r) {
        return canonical_endpoints(hypersurface_scheme(d, r));
    }, py::arg("d"), py::arg("r"));
    mod.def("quintic_scheme_dot", [] { return quintic_scheme().dot(); });
    mod.def("blowup_dependencies", [](const std::string& v, const std::vector<std::string>& ws,
                                      const std::string& z) {
        return blowup_dependencies(v, ws, z);
    }, py::arg("space"), py::arg("divisors"), py::arg("center"));

    // worked computation -----------------------------------------------------
    mod.def("quintic_surface_result", [](bool alternate) {
        return rat_str(quintic_surface_compute(alternate).result);
    }, py::arg("alternate") = false);
    mod.def("quintic_surface_report", [](bool alternate) {
        return quintic_surface_compute(alternate).text;
    }, py::arg("alternate") = false);
}
