// Command-line surface for the exact-rational relative-invariant engine.
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "relgw/cohomology.hpp"
#include "relgw/degeneration.hpp"
#include "relgw/invariants.hpp"
#include "relgw/p1theory.hpp"
#include "relgw/partitions.hpp"
#include "relgw/quintic_surface.hpp"
#include "relgw/rubber.hpp"
#include "relgw/schemes.hpp"
#include "relgw/solver.hpp"

using namespace relgw;

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open file: " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

// Catalog specs: point, P<n>, curve<g>, k3:<h_self>:<odd_pairs>; anything
// else is read as a ring-description JSON file.
BasisPtr resolve_ring(const std::string& spec) {
    if (spec == "point") return ring_point();
    if (spec.size() > 1 && spec[0] == 'P' && spec.find_first_not_of("0123456789", 1) == std::string::npos)
        return ring_projective(std::stoi(spec.substr(1)));
    if (spec.rfind("curve", 0) == 0 && spec.size() > 5)
        return ring_curve(std::stoi(spec.substr(5)));
    if (spec.rfind("k3:", 0) == 0) {
        size_t c = spec.find(':', 3);
        if (c == std::string::npos) throw std::runtime_error("bad k3 ring spec: " + spec);
        return ring_k3_model(std::stoi(spec.substr(3, c - 3)), std::stoi(spec.substr(c + 1)));
    }
    return ring_from_json_text(read_file(spec));
}

std::vector<long> parse_vec(const std::string& text) {
    std::vector<long> out;
    size_t start = 0;
    while (start <= text.size()) {
        size_t comma = text.find(',', start);
        if (comma == std::string::npos) comma = text.size();
        out.push_back(std::stol(text.substr(start, comma - start)));
        start = comma + 1;
    }
    return out;
}

// Shared model options: rank, named intersection forms, optional fiber class.
struct ModelOpts {
    int rank = 1;
    std::vector<std::string> forms;  // "NAME=v1,v2"
    std::string fiber;

    void attach(CLI::App* cmd) {
        cmd->add_option("--rank", rank, "curve-class lattice rank");
        cmd->add_option("--form", forms,
                        "named intersection form, e.g. --form D0=1 --form H=0");
        cmd->add_option("--fiber", fiber, "fiber class coordinates, e.g. 1,0");
    }

    ModelPtr build(const std::vector<std::string>& default_forms) const {
        auto m = std::make_shared<CurveClassModel>();
        m->name = "cli";
        m->rank = rank;
        for (int i = 0; i < rank; ++i) {
            std::vector<long> gen((size_t)rank, 0);
            gen[(size_t)i] = 1;
            m->cone_generators.push_back(std::move(gen));
        }
        m->positive_form.assign((size_t)rank, 1);
        auto use = forms.empty() ? default_forms : forms;
        for (const auto& f : use) {
            size_t eq = f.find('=');
            if (eq == std::string::npos) throw std::runtime_error("bad --form: " + f);
            auto v = parse_vec(f.substr(eq + 1));
            if ((int)v.size() != rank) throw std::runtime_error("form rank mismatch: " + f);
            m->intersection_forms[f.substr(0, eq)] = std::move(v);
        }
        if (!fiber.empty()) m->fiber_coords = parse_vec(fiber);
        m->validate();
        return m;
    }
};

// Bundle geometry options for the degeneration/rubber commands: the target is
// the P^1-bundle over the base with c1(L) a multiple of the first degree-2
// base label.
struct GeomOpts {
    std::string base = "point";
    long c1 = 0;
    ModelOpts model;

    void attach(CLI::App* cmd) {
        cmd->add_option("--base", base, "base ring spec (default point)");
        cmd->add_option("--c1", c1, "c1(L) as a multiple of the first degree-2 base label");
        model.attach(cmd);
    }

    BundleGeometry geometry() const {
        BasisPtr b = resolve_ring(base);
        CohClass c = CohClass::zero(b);
        if (c1 != 0) {
            int idx = -1;
            for (size_t i = 0; i < b->size(); ++i)
                if (b->deg((int)i) == 2) { idx = (int)i; break; }
            if (idx < 0) throw std::runtime_error("base ring has no degree-2 label for --c1");
            c = Rat(c1) * CohClass::unit(b, idx);
        }
        return build_bundle_basis(b, c);
    }

    DegenerationContext context() const {
        DegenerationContext ctx;
        ctx.geo = geometry();
        std::vector<std::string> defaults = {"D0=", "Dinf=", "H="};
        std::string ones, zeros;
        for (int i = 0; i < model.rank; ++i) {
            ones += (i ? ",1" : "1");
            zeros += (i ? ",0" : "0");
        }
        defaults[0] += ones;
        defaults[1] += ones;
        defaults[2] += zeros;
        ctx.model = model.build(defaults);
        ctx.divisor_ring = ctx.geo.base;
        // the ample class must exist as a base-ring label; fall back to the
        // first degree-2 label when the base has no "H"
        bool has_h = false;
        for (const auto& l : ctx.geo.base->labels) has_h = has_h || l == ctx.ample_form;
        if (!has_h)
            for (size_t i = 0; i < ctx.geo.base->size(); ++i)
                if (ctx.geo.base->deg((int)i) == 2) {
                    ctx.ample_form = ctx.geo.base->labels[i];
                    break;
                }
        return ctx;
    }
};

// Minimal ring accepting the labels mentioned in a partition literal, for
// commands that only need degrees (zee, lex, order).  Labels other than the
// identity are given degree 2.
BasisPtr inferred_ring(const std::string& text) {
    auto b = std::make_shared<GradedBasis>();
    b->name = "inferred";
    b->labels.push_back("Id");
    b->degrees.push_back(0);
    size_t i = 0;
    while ((i = text.find('"', i)) != std::string::npos) {
        size_t j = text.find('"', i + 1);
        if (j == std::string::npos) break;
        std::string lbl = text.substr(i + 1, j - i - 1);
        if (std::find(b->labels.begin(), b->labels.end(), lbl) == b->labels.end()) {
            b->labels.push_back(lbl);
            b->degrees.push_back(2);
        }
        i = j + 1;
    }
    b->dim_real = 2;
    b->identity = 0;
    b->pairing.assign(b->size(), std::vector<Rat>(b->size(), 0));
    return b;
}

WeightedPartition parse_single_part(const BasisPtr& ring, const std::string& text) {
    std::string wrapped = text;
    if (!wrapped.empty() && wrapped[0] == '(') wrapped = "{" + wrapped + "}";
    WeightedPartition p = parse_partition(ring, wrapped);
    if (p.length() != 1) throw std::runtime_error("expected a single part: " + text);
    return p;
}

const char* size_cmp_name(SizeCmp c) {
    switch (c) {
        case SizeCmp::Greater: return "Greater";
        case SizeCmp::Less: return "Less";
        case SizeCmp::EqualSize: return "EqualSize";
        case SizeCmp::Equal: return "Equal";
    }
    return "?";
}

const char* lex_cmp_name(LexCmp c) {
    switch (c) {
        case LexCmp::Greater: return "Greater";
        case LexCmp::Less: return "Less";
        case LexCmp::Equal: return "Equal";
        case LexCmp::Incomparable: return "Incomparable";
    }
    return "?";
}

PlainPartition parse_plain(const std::string& text) {
    std::string t = text;
    if (!t.empty() && t.front() == '(') t = t.substr(1, t.size() - 2);
    if (t.empty()) return PlainPartition::make({});
    return PlainPartition::make(parse_vec(t));
}

OracleTable read_oracles(const std::string& path) {
    OracleTable table;
    std::istringstream in(read_file(path));
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        size_t s1 = line.find(" | ");
        if (s1 == std::string::npos) throw std::runtime_error("bad oracle line: " + line);
        size_t s2 = line.find(" | ", s1 + 3);
        std::string ref = line.substr(0, s1);
        std::string val = s2 == std::string::npos ? line.substr(s1 + 3)
                                                  : line.substr(s1 + 3, s2 - s1 - 3);
        std::string prov = s2 == std::string::npos ? "user" : line.substr(s2 + 3);
        table.set(ref, parse_rat(val), prov);
    }
    return table;
}

void roundtrip_check(const std::vector<Equation>& eqs, const ModelPtr& model,
                     const BasisPtr& ring, const BasisPtr& divisor_ring) {
    std::string dump = dump_equations(eqs);
    auto back = parse_equations(model, ring, divisor_ring, dump);
    if (dump_equations(back) != dump)
        throw std::runtime_error("equation dump failed to round-trip");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact-rational engine for relative-invariant recursions"};
    app.require_subcommand(1);
    std::ostringstream out;
    int rc = 0;

    try {
        // ------------------------------------------------------------------
        // partitions
        auto* partitions = app.add_subcommand("partitions", "weighted-partition algebra");
        partitions->require_subcommand(1);
        std::string part_ring_spec;
        std::string part_a, part_b;

        auto* p_zee = partitions->add_subcommand("zee", "centralizer constant");
        p_zee->add_option("partition", part_a)->required();
        p_zee->add_option("--ring", part_ring_spec);
        auto* p_dual = partitions->add_subcommand("dual", "dualized partition with sign");
        p_dual->add_option("partition", part_a)->required();
        p_dual->add_option("--ring", part_ring_spec)->required();
        auto* p_order = partitions->add_subcommand("order", "size relation on single parts");
        p_order->add_option("a", part_a)->required();
        p_order->add_option("b", part_b)->required();
        p_order->add_option("--ring", part_ring_spec);
        auto* p_lex = partitions->add_subcommand("lex", "lexicographic comparison");
        p_lex->add_option("a", part_a)->required();
        p_lex->add_option("b", part_b)->required();
        p_lex->add_option("--ring", part_ring_spec);

        // ------------------------------------------------------------------
        // order
        auto* order = app.add_subcommand("order", "partial orders on invariant keys");
        order->require_subcommand(1);
        std::string key_a, key_b;
        GeomOpts order_geom;
        auto* o_t2 = order->add_subcommand("typeII", "distinguished type II order");
        o_t2->add_option("a", key_a)->required();
        o_t2->add_option("b", key_b)->required();
        order_geom.attach(o_t2);
        std::string pair_ring_spec = "point";
        ModelOpts pair_model;
        auto* o_pair = order->add_subcommand("pair", "relative-pair order");
        o_pair->add_option("a", key_a)->required();
        o_pair->add_option("b", key_b)->required();
        o_pair->add_option("--ring", pair_ring_spec);
        pair_model.attach(o_pair);
        auto* o_down = order->add_subcommand("downset", "all strictly lower keys in bounds");
        std::string down_key;
        int down_max_genus = 2, down_max_desc = 1, down_max_omega = 0;
        std::vector<std::string> down_labels;
        o_down->add_option("key", down_key)->required();
        order_geom.attach(o_down);
        o_down->add_option("--max-genus", down_max_genus);
        o_down->add_option("--max-descendent", down_max_desc);
        o_down->add_option("--max-omega", down_max_omega);
        o_down->add_option("--label", down_labels, "insertion labels for omega enumeration");

        // ------------------------------------------------------------------
        // hurwitz / character
        auto* hur = app.add_subcommand("hurwitz", "branched-cover counts");
        long h_g = 0, h_d = 1;
        std::vector<std::string> h_profiles;
        bool h_disconnected = false;
        hur->add_option("--genus", h_g)->required();
        hur->add_option("--degree", h_d)->required();
        hur->add_option("--profile", h_profiles, "ramification profile, e.g. (2,1)");
        hur->add_flag("--disconnected", h_disconnected);

        auto* chr = app.add_subcommand("character", "symmetric-group characters");
        std::string c_lambda, c_rho;
        long c_table = 0;
        chr->add_option("--lambda", c_lambda);
        chr->add_option("--rho", c_rho);
        chr->add_option("--table", c_table, "print the full table for S_n");

        // ------------------------------------------------------------------
        // relation1 / relation2
        auto* rel1 = app.add_subcommand("relation1", "degeneration of a distinguished type II key");
        std::string rel1_key;
        GeomOpts rel1_geom;
        bool rel1_dump = false;
        rel1->add_option("key", rel1_key)->required();
        rel1_geom.attach(rel1);
        rel1->add_flag("--dump-equations", rel1_dump, "emit the parseable dump (default)");

        auto* rel2 = app.add_subcommand("relation2", "ample-class rewriting of a type I key");
        GeomOpts rel2_geom;
        int rel2_g = 0;
        std::string rel2_beta = "1", rel2_mu = "{}", rel2_nu = "{}", rel2_omega, rel2_delta;
        bool rel2_prime = false, rel2_dump = false;
        rel2_geom.attach(rel2);
        rel2->add_option("--g", rel2_g);
        rel2->add_option("--beta", rel2_beta);
        rel2->add_option("--mu", rel2_mu);
        rel2->add_option("--nu", rel2_nu);
        rel2->add_option("--omega", rel2_omega, "comma-separated insertions tauk(label)");
        rel2->add_option("--delta", rel2_delta, "distinguished base label (relation 2 only)");
        rel2->add_flag("--prime", rel2_prime, "use relation 2' (no distinguished slot)");
        rel2->add_flag("--dump-equations", rel2_dump);

        // ------------------------------------------------------------------
        // rubber
        auto* rubber = app.add_subcommand("rubber", "rubber-calculus rewriting");
        rubber->require_subcommand(1);
        auto* r_reduce = rubber->add_subcommand("reduce", "reduce a rubber key to type II form");
        std::string rub_key, rub_strategy = "fiber";
        bool rub_trace = false;
        GeomOpts rub_geom;
        r_reduce->add_option("key", rub_key)->required();
        rub_geom.attach(r_reduce);
        r_reduce->add_option("--strategy", rub_strategy, "fiber | nonfiber");
        r_reduce->add_flag("--trace", rub_trace);

        // ------------------------------------------------------------------
        // theorem2
        auto* thm2 = app.add_subcommand("theorem2", "relative-pair systems");
        thm2->require_subcommand(1);
        auto* t2_system = thm2->add_subcommand("system", "one equation per pair key");
        std::vector<std::string> t2_keys;
        std::string t2_ring_spec = "point";
        ModelOpts t2_model;
        bool t2_no_normalize = false;
        t2_system->add_option("--key", t2_keys)->required();
        t2_system->add_option("--ring", t2_ring_spec, "divisor ring spec");
        t2_model.attach(t2_system);
        t2_system->add_flag("--no-normalize", t2_no_normalize);

        // ------------------------------------------------------------------
        // solve / verify
        auto* solve_cmd = app.add_subcommand("solve", "solve a triangular system");
        auto* verify_cmd = app.add_subcommand("verify", "check residuals of a solved system");
        std::string sv_system, sv_oracles, sv_ring_spec = "point", sv_divisor_spec, sv_explain;
        ModelOpts sv_model;
        for (CLI::App* c : {solve_cmd, verify_cmd}) {
            c->add_option("--system", sv_system)->required();
            c->add_option("--oracles", sv_oracles);
            c->add_option("--ring", sv_ring_spec);
            c->add_option("--divisor-ring", sv_divisor_spec);
            sv_model.attach(c);
        }
        solve_cmd->add_option("--explain", sv_explain, "print the derivation of one key");

        // ------------------------------------------------------------------
        // scheme
        auto* scheme = app.add_subcommand("scheme", "degeneration-scheme planning");
        scheme->require_subcommand(1);
        bool sc_endpoints = false, sc_dot = false;
        auto* sc_quintic = scheme->add_subcommand("quintic", "the full quintic scheme");
        sc_quintic->add_flag("--endpoints", sc_endpoints);
        sc_quintic->add_flag("--dot", sc_dot);
        auto* sc_hyper = scheme->add_subcommand("hypersurface", "one hypersurface step");
        int sc_degree = 5, sc_ambient = 4;
        sc_hyper->add_option("--degree", sc_degree)->required();
        sc_hyper->add_option("--ambient", sc_ambient)->required();
        sc_hyper->add_flag("--endpoints", sc_endpoints);
        sc_hyper->add_flag("--dot", sc_dot);
        auto* sc_blowup = scheme->add_subcommand("blowup", "blow-up dependency chain");
        std::string bl_space, bl_divisors, bl_center;
        sc_blowup->add_option("--space", bl_space)->required();
        sc_blowup->add_option("--divisors", bl_divisors)->required();
        sc_blowup->add_option("--center", bl_center)->required();

        // ------------------------------------------------------------------
        // quintic-surface
        auto* qs = app.add_subcommand("quintic-surface", "end-to-end worked computation");
        bool qs_report = false, qs_alternate = false, qs_dump = false;
        qs->add_flag("--report", qs_report);
        qs->add_flag("--alternate", qs_alternate, "solve the ruled side from absolute inputs");
        qs->add_flag("--dump-equations", qs_dump);

        app.parse(argc, argv);

        // ------------------------------------------------------------------
        if (p_zee->parsed()) {
            BasisPtr r = part_ring_spec.empty() ? inferred_ring(part_a)
                                                : resolve_ring(part_ring_spec);
            out << rat_str(parse_partition(r, part_a).zee()) << "\n";
        } else if (p_dual->parsed()) {
            BasisPtr r = resolve_ring(part_ring_spec);
            SignedPartition d = dual(parse_partition(r, part_a));
            out << "sign = " << d.sign << "\n" << "dual = " << d.partition.str() << "\n";
        } else if (p_order->parsed()) {
            BasisPtr r = part_ring_spec.empty() ? inferred_ring(part_a + part_b)
                                                : resolve_ring(part_ring_spec);
            auto pa = parse_single_part(r, part_a), pb = parse_single_part(r, part_b);
            out << size_cmp_name(size_compare(r, pa.parts[0], pb.parts[0])) << "\n";
        } else if (p_lex->parsed()) {
            BasisPtr r = part_ring_spec.empty() ? inferred_ring(part_a + part_b)
                                                : resolve_ring(part_ring_spec);
            out << lex_cmp_name(lex_compare(parse_partition(r, part_a),
                                            parse_partition(r, part_b)))
                << "\n";
        } else if (o_t2->parsed()) {
            DegenerationContext ctx = order_geom.context();
            InvariantKey a = parse_key(ctx.model, ctx.geo.bundle, ctx.divisor_ring, key_a);
            InvariantKey b = parse_key(ctx.model, ctx.geo.bundle, ctx.divisor_ring, key_b);
            out << (circ_less_typeII(a, b, ctx.geo.bundle) == OrderResult::Lower ? "Lower"
                                                                              : "NotLower")
                << "\n";
        } else if (o_pair->parsed()) {
            BasisPtr w = resolve_ring(pair_ring_spec);
            std::string ones;
            for (int i = 0; i < pair_model.rank; ++i) ones += (i ? ",1" : "1");
            ModelPtr m = pair_model.build({"W=" + ones});
            InvariantKey a = parse_key(m, w, key_a), b = parse_key(m, w, key_b);
            out << (circ_less_pair(a, b) == OrderResult::Lower ? "Lower" : "NotLower") << "\n";
        } else if (o_down->parsed()) {
            DegenerationContext ctx = order_geom.context();
            InvariantKey k = parse_key(ctx.model, ctx.geo.bundle, ctx.divisor_ring, down_key);
            Bounds bounds;
            bounds.max_genus = down_max_genus;
            bounds.max_descendent = down_max_desc;
            bounds.max_omega = down_max_omega;
            bounds.ring = ctx.geo.bundle;
            bounds.divisor_ring = ctx.divisor_ring;
            bounds.insertion_labels = down_labels;
            auto keys = downset(k, bounds);
            for (const auto& kk : keys) out << kk.str() << "\n";
            out << "count = " << keys.size() << "\n";
        } else if (hur->parsed()) {
            std::vector<PlainPartition> profiles;
            for (const auto& p : h_profiles) profiles.push_back(parse_plain(p));
            out << rat_str(hurwitz_number(h_g, h_d, profiles, !h_disconnected)) << "\n";
        } else if (chr->parsed()) {
            if (c_table > 0) {
                CharacterTable t = character_table(c_table);
                for (const auto& lam : t.classes) {
                    out << lam.str();
                    for (const auto& rho : t.classes)
                        out << " | " << t.values.at({lam, rho});
                    out << "\n";
                }
            } else if (!c_lambda.empty() && !c_rho.empty()) {
                out << character(parse_plain(c_lambda), parse_plain(c_rho)) << "\n";
            } else {
                throw std::runtime_error("character needs --table or both --lambda and --rho");
            }
        } else if (rel1->parsed()) {
            DegenerationContext ctx = rel1_geom.context();
            InvariantKey k = parse_key(ctx.model, ctx.geo.bundle, ctx.divisor_ring, rel1_key);
            std::vector<Equation> eqs{relation1(k, ctx)};
            roundtrip_check(eqs, ctx.model, ctx.geo.bundle, ctx.divisor_ring);
            out << dump_equations(eqs);
        } else if (rel2->parsed()) {
            DegenerationContext ctx = rel2_geom.context();
            CurveClass beta = CurveClass::make(ctx.model, parse_vec(rel2_beta));
            WeightedPartition mu = parse_partition(ctx.divisor_ring, rel2_mu);
            WeightedPartition nu = parse_partition(ctx.divisor_ring, rel2_nu);
            std::vector<Insertion> omega;
            if (!rel2_omega.empty()) {
                std::istringstream ss(rel2_omega);
                std::string tok;
                while (std::getline(ss, tok, ';')) {
                    size_t p = tok.find('(');
                    Insertion ins;
                    ins.k = std::stoi(tok.substr(3, p - 3));
                    ins.cls = tok.substr(p + 1, tok.size() - p - 2);
                    omega.push_back(ins);
                }
                omega = sort_insertions(omega);
            }
            Equation eq = rel2_prime
                              ? relation2prime(ctx, rel2_g, beta, mu, nu, omega)
                              : relation2(ctx, rel2_g, beta, mu, nu, omega, rel2_delta);
            std::vector<Equation> eqs{eq};
            roundtrip_check(eqs, ctx.model, ctx.geo.bundle, ctx.divisor_ring);
            out << dump_equations(eqs);
        } else if (r_reduce->parsed()) {
            DegenerationContext dctx = rub_geom.context();
            RubberContext ctx;
            ctx.geo = dctx.geo;
            ctx.model = dctx.model;
            InvariantKey k = parse_key(ctx.model, ctx.geo.bundle, ctx.geo.base, rub_key);
            RubberStrategy strat;
            if (rub_strategy == "fiber")
                strat = RubberStrategy::FiberClass;
            else if (rub_strategy == "nonfiber")
                strat = RubberStrategy::NonFiber;
            else
                throw std::runtime_error("unknown strategy: " + rub_strategy);
            ReduceResult res = reduce(ctx, k, strat);
            if (rub_trace)
                for (const auto& t : res.trace)
                    out << "step | " << t.rule << " | " << t.subject << " | "
                        << t.measure_before << " -> " << t.measure_after << " | "
                        << t.produced << "\n";
            out << res.expr.str() << "\n";
        } else if (t2_system->parsed()) {
            PairContext ctx;
            ctx.w_ring = resolve_ring(t2_ring_spec);
            std::string ones;
            for (int i = 0; i < t2_model.rank; ++i) ones += (i ? ",1" : "1");
            ctx.model = t2_model.build({"W=" + ones});
            ctx.normalize_divisor = !t2_no_normalize;
            std::vector<InvariantKey> keys;
            for (const auto& k : t2_keys) keys.push_back(parse_key(ctx.model, ctx.w_ring, k));
            auto eqs = theorem2_system(keys, ctx);
            roundtrip_check(eqs, ctx.model, ctx.w_ring, ctx.w_ring);
            out << dump_equations(eqs);
        } else if (solve_cmd->parsed() || verify_cmd->parsed()) {
            BasisPtr ring = resolve_ring(sv_ring_spec);
            BasisPtr divisor =
                sv_divisor_spec.empty() ? ring : resolve_ring(sv_divisor_spec);
            std::string ones;
            for (int i = 0; i < sv_model.rank; ++i) ones += (i ? ",1" : "1");
            ModelPtr m = sv_model.build({"W=" + ones});
            auto eqs = parse_equations(m, ring, divisor, read_file(sv_system));
            OracleTable oracles;
            if (!sv_oracles.empty()) oracles = read_oracles(sv_oracles);
            SolveResult sol = solve(eqs, oracles);
            if (verify_cmd->parsed()) {
                verify(eqs, sol, oracles);
                out << "verified " << eqs.size() << " equations; all residuals zero\n";
            } else if (!sv_explain.empty()) {
                out << explain(sol, sv_explain);
            } else {
                for (const auto& k : sol.order)
                    out << k << " = " << rat_str(sol.values.at(k)) << "\n";
            }
        } else if (sc_quintic->parsed() || sc_hyper->parsed()) {
            SchemeDAG dag = sc_quintic->parsed() ? quintic_scheme()
                                                 : hypersurface_scheme(sc_degree, sc_ambient);
            if (sc_endpoints)
                for (const auto& n : canonical_endpoints(dag)) out << n << "\n";
            else if (sc_dot)
                out << dag.dot();
            else
                out << dag.str();
        } else if (sc_blowup->parsed()) {
            std::vector<std::string> divisors;
            std::istringstream ss(bl_divisors);
            std::string tok;
            while (std::getline(ss, tok, ',')) divisors.push_back(tok);
            for (const auto& n : blowup_dependencies(bl_space, divisors, bl_center))
                out << n << "\n";
        } else if (qs->parsed()) {
            if (qs_dump) {
                QuinticSystem sys = build_quintic_system(qs_alternate);
                out << dump_equations(sys.equations);
            } else {
                QuinticReport rep = quintic_surface_compute(qs_alternate);
                if (qs_report)
                    out << rep.text;
                else
                    out << "result = " << rat_str(rep.result) << "\n";
            }
        }
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        rc = 1;
    }
    std::cout << out.str();
    return rc;
}
