#include "relgw/degeneration.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <sstream>
#include <stdexcept>

namespace relgw {

// ---------------------------------------------------------------------------
// Coefficients and equations

std::string TermCoeff::str() const {
    std::ostringstream os;
    os << rat_str(value);
    for (const auto& s : slots) os << "*" << s;
    return os.str();
}

TermCoeff TermCoeff::operator*(const TermCoeff& o) const {
    TermCoeff r;
    r.value = value * o.value;
    r.slots = slots;
    r.slots.insert(r.slots.end(), o.slots.begin(), o.slots.end());
    std::sort(r.slots.begin(), r.slots.end());
    return r;
}

std::string Equation::str() const {
    std::ostringstream os;
    os << "equation | " << principal.str() << " | " << rat_str(principal_coeff) << "\n";
    for (const auto& t : terms) {
        os << "term | " << rat_str(t.coeff.value) << " | " << t.family << " | "
           << t.coeff.slots.size();
        for (const auto& s : t.coeff.slots) os << " | " << s;
        os << " | " << t.key.str() << "\n";
    }
    for (const auto& t : oracle_terms) {
        os << "oracle | " << rat_str(t.coeff.value) << " | " << t.coeff.slots.size();
        for (const auto& s : t.coeff.slots) os << " | " << s;
        os << " | " << t.ref << "\n";
    }
    for (const auto& d : diagnostics) os << "diag | " << d << "\n";
    os << "end\n";
    return os.str();
}

std::string dump_equations(const std::vector<Equation>& eqs) {
    std::string out;
    for (const auto& e : eqs) out += e.str();
    return out;
}

namespace {
std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> out;
    size_t start = 0;
    while (true) {
        size_t p = line.find(" | ", start);
        if (p == std::string::npos) {
            out.push_back(line.substr(start));
            return out;
        }
        out.push_back(line.substr(start, p - start));
        start = p + 3;
    }
}
}  // namespace

std::vector<Equation> parse_equations(const ModelPtr& model, const BasisPtr& ring,
                                      const BasisPtr& divisor_ring, const std::string& text) {
    std::vector<Equation> out;
    std::optional<Equation> cur;
    std::istringstream is(text);
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        auto f = split_fields(line);
        const std::string& tag = f[0];
        if (tag == "equation") {
            if (cur) throw std::invalid_argument("equation record before previous end");
            if (f.size() != 3) throw std::invalid_argument("bad equation record");
            cur = Equation{};
            cur->principal = parse_key(model, ring, divisor_ring, f[1]);
            cur->principal_coeff = parse_rat(f[2]);
        } else if (tag == "term") {
            if (!cur || f.size() < 5) throw std::invalid_argument("bad term record");
            EqTerm t;
            t.coeff.value = parse_rat(f[1]);
            t.family = std::stoi(f[2]);
            size_t nslots = std::stoul(f[3]);
            if (f.size() != 5 + nslots) throw std::invalid_argument("bad term slot count");
            for (size_t i = 0; i < nslots; ++i) t.coeff.slots.push_back(f[4 + i]);
            t.key = parse_key(model, ring, divisor_ring, f.back());
            cur->terms.push_back(std::move(t));
        } else if (tag == "oracle") {
            if (!cur || f.size() < 4) throw std::invalid_argument("bad oracle record");
            EqOracleTerm t;
            t.coeff.value = parse_rat(f[1]);
            size_t nslots = std::stoul(f[2]);
            if (f.size() != 4 + nslots) throw std::invalid_argument("bad oracle slot count");
            for (size_t i = 0; i < nslots; ++i) t.coeff.slots.push_back(f[3 + i]);
            t.ref = f.back();
            cur->oracle_terms.push_back(std::move(t));
        } else if (tag == "diag") {
            if (!cur) throw std::invalid_argument("stray diag record");
            cur->diagnostics.push_back(line.substr(7));
        } else if (tag == "end") {
            if (!cur) throw std::invalid_argument("stray end record");
            out.push_back(std::move(*cur));
            cur.reset();
        } else {
            throw std::invalid_argument("unknown equation record: " + tag);
        }
    }
    if (cur) throw std::invalid_argument("unterminated equation record");
    return out;
}

Rat coefficient_C(const WeightedPartition& nu, long n_inf) {
    Rat c = 1;
    for (const auto& p : nu.parts) c /= factorial(p.mult - 1);
    for (int i = 0; i < nu.id_count(); ++i) c *= n_inf;
    return c;
}

// ---------------------------------------------------------------------------
// Splittings

namespace {
std::vector<std::vector<int>> index_subsets(size_t n) {
    std::vector<std::vector<int>> out;
    for (size_t mask = 0; mask < (size_t{1} << n); ++mask) {
        std::vector<int> s;
        for (size_t i = 0; i < n; ++i)
            if (mask & (size_t{1} << i)) s.push_back((int)i);
        out.push_back(std::move(s));
    }
    return out;
}
}  // namespace

std::vector<SplittingTerm> enumerate_splittings(const InvariantKey& key,
                                                const DegenerationContext& ctx) {
    std::vector<SplittingTerm> out;
    if (key.beta.is_zero()) {
        SplittingTerm t;
        t.g1 = key.g;
        t.beta1 = key.beta;
        t.g2 = 0;
        t.beta2 = key.beta;
        t.eta = WeightedPartition::empty(ctx.divisor_ring);
        t.component_shape = "trivial";
        t.case_tag = SplittingTerm::Case::Trivial;
        out.push_back(std::move(t));
        return out;
    }
    auto omega_splits = index_subsets(key.omega.size());
    for (const auto& beta1 : effective_classes_below(key.beta)) {
        CurveClass beta2 = key.beta - beta1;
        long m = beta1.intersect("Dinf");
        if (m <= 0 || m != beta2.intersect("D0")) continue;
        for (const auto& eta : enumerate_partitions(ctx.divisor_ring, m)) {
            int nodes = eta.length();
            for (int g1 = 0; g1 + nodes - 1 <= key.g; ++g1) {
                int g2 = key.g - g1 - nodes + 1;
                if (g2 < 0) continue;
                for (const auto& to2 : omega_splits) {
                    SplittingTerm t;
                    t.g1 = g1;
                    t.g2 = g2;
                    t.beta1 = beta1;
                    t.beta2 = beta2;
                    t.eta = eta;
                    t.omega_to_side2 = to2;
                    t.component_shape = "connected|connected";
                    if (beta2.is_fiber_multiple())
                        t.case_tag = SplittingTerm::Case::Case1;
                    else if (beta1.is_fiber_multiple())
                        t.case_tag = SplittingTerm::Case::Case2;
                    else
                        t.case_tag = SplittingTerm::Case::Mixed;
                    out.push_back(std::move(t));
                }
            }
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Relation 1

namespace {
// Multiset subsets of an insertion list, by index mask.
std::vector<std::vector<Insertion>> omega_subsets(const std::vector<Insertion>& omega) {
    std::vector<std::vector<Insertion>> out;
    std::set<std::string> seen;
    for (const auto& idx : index_subsets(omega.size())) {
        std::vector<Insertion> s;
        for (int i : idx) s.push_back(omega[(size_t)i]);
        s = sort_insertions(s);
        std::string sig;
        for (const auto& ins : s) sig += ins.str() + ";";
        if (seen.insert(sig).second) out.push_back(std::move(s));
    }
    return out;
}

// tau_{m-1}(delta.[Dinf]) insertion for a nu part.
Insertion dinf_insertion(const BasisPtr& base, const WeightedPart& p) {
    std::string lbl = base->labels[(size_t)p.weight];
    std::string cls = (p.weight == base->identity) ? "[Dinf]" : lbl + "*[Dinf]";
    return Insertion{(int)p.mult - 1, cls};
}
}  // namespace

Equation relation1(const InvariantKey& R, const DegenerationContext& ctx) {
    if (R.species != Species::TypeII || !R.distinguished || !R.mu || !R.nu)
        throw std::invalid_argument("relation1 expects a distinguished type II key");
    const BasisPtr& base = ctx.geo.base;
    long n_inf = R.beta.intersect("Dinf");
    long n0 = R.beta.intersect("D0");
    Equation eq;
    eq.principal = R;
    eq.principal_coeff = coefficient_C(*R.nu, n_inf);

    // The type I invariant with nu traded for descendents of [Dinf]-classes.
    std::vector<Insertion> nu_ins;
    for (const auto& p : R.nu->parts) nu_ins.push_back(dinf_insertion(base, p));
    InvariantKey lead;
    lead.species = Species::TypeI_D0;
    lead.g = R.g;
    lead.beta = R.beta;
    lead.mu = R.mu;
    lead.distinguished = R.distinguished;
    {
        auto om = R.omega;
        om.insert(om.end(), nu_ins.begin(), nu_ins.end());
        lead.omega = sort_insertions(om);
    }
    eq.terms.push_back({TermCoeff{1, {}}, lead, 0});

    // Corrections with a rubber factor over Dinf (same beta; the fiber part of
    // the rubber side carries no class).  Every strictly lower distinguished
    // type II shape with a sub-multiset of omega appears with a symbolic
    // fiber constant.
    for (const auto& om1 : omega_subsets(R.omega)) {
        for (const auto& eta : enumerate_partitions(base, n_inf)) {
            InvariantKey rt = R;
            rt.omega = om1;
            rt.nu = eta;
            if (rt == R) continue;
            if (circ_less_typeII(rt, R, ctx.geo.bundle) != OrderResult::Lower) continue;
            TermCoeff c;
            c.value = -1;
            c.slots.push_back("C[" + rt.str() + "|" + R.str() + "]");
            eq.terms.push_back({c, rt, 1});
        }
        // Corrections with a rubber factor over D0: type I shapes with deeper
        // relative conditions; the distinguished insertion is absorbed.
        for (const auto& mu2 : enumerate_partitions(base, n0)) {
            if (mu2.deg() < R.mu->deg() + 1) continue;
            InvariantKey ti;
            ti.species = Species::TypeI_D0;
            ti.g = R.g;
            ti.beta = R.beta;
            ti.mu = mu2;
            {
                auto om = om1;
                om.insert(om.end(), nu_ins.begin(), nu_ins.end());
                ti.omega = sort_insertions(om);
            }
            TermCoeff c;
            c.value = -1;
            c.slots.push_back("C0[" + ti.str() + "|" + R.str() + "]");
            eq.terms.push_back({c, ti, 2});
        }
    }
    eq.oracle_terms.push_back({TermCoeff{-1, {}}, "nonprincipal:" + R.str()});
    return eq;
}

// ---------------------------------------------------------------------------
// Relations 2 and 2'

namespace {
// Splits a class on the base into label terms and appends the distinguished
// type I keys (class.[D0]) with symbolic coefficients.
void append_family(Equation& eq, const DegenerationContext& ctx, int family, int sign,
                   const CohClass& base_cls, int g, const CurveClass& beta,
                   const WeightedPartition& mu2, const WeightedPartition& nu2,
                   const std::vector<Insertion>& om1) {
    const BasisPtr& base = ctx.geo.base;
    std::vector<Insertion> nu_ins;
    for (const auto& p : nu2.parts) nu_ins.push_back(dinf_insertion(base, p));
    for (size_t i = 0; i < base->size(); ++i) {
        if (base_cls.coeff((int)i) == 0) continue;
        std::string lbl = base->labels[i];
        std::string cls = (int)i == base->identity ? "[D0]" : lbl + "*[D0]";
        InvariantKey k;
        k.species = Species::TypeI_D0;
        k.g = g;
        k.beta = beta;
        k.mu = mu2;
        k.distinguished = Insertion{0, cls};
        auto om = om1;
        om.insert(om.end(), nu_ins.begin(), nu_ins.end());
        k.omega = sort_insertions(om);
        TermCoeff c;
        c.value = Rat(sign) * base_cls.coeff((int)i);
        c.slots.push_back("R2[f" + std::to_string(family) + "|" + k.str() + "]");
        eq.terms.push_back({c, k, family});
    }
}

Equation relation2_impl(const DegenerationContext& ctx, int g, const CurveClass& beta,
                        const WeightedPartition& mu, const WeightedPartition& nu,
                        const std::vector<Insertion>& omega,
                        const std::optional<std::string>& delta_label, bool prime) {
    const BasisPtr& base = ctx.geo.base;
    long n0 = beta.intersect("D0");
    long n_inf = beta.intersect("Dinf");
    int half_dim = base->dim_real / 2;
    std::string ample = ctx.ample_form;
    CohClass h_cls = CohClass::unit(base, ample);

    Equation eq;
    InvariantKey lhs;
    lhs.species = Species::TypeI_D0;
    lhs.g = g;
    lhs.beta = beta;
    lhs.mu = mu;
    if (delta_label) {
        int di = base->index(*delta_label);
        lhs.distinguished =
            Insertion{0, di == base->identity ? "[D0]" : *delta_label + "*[D0]"};
    } else {
        lhs.distinguished = Insertion{0, "[D0]"};
    }
    {
        std::vector<Insertion> nu_ins;
        for (const auto& p : nu.parts) nu_ins.push_back(dinf_insertion(base, p));
        auto om = omega;
        om.insert(om.end(), nu_ins.begin(), nu_ins.end());
        lhs.omega = sort_insertions(om);
    }
    eq.principal = lhs;
    eq.principal_coeff = 1;

    auto mus = enumerate_partitions(base, n0);
    auto nus = enumerate_partitions(base, n_inf);
    for (const auto& om1 : omega_subsets(omega)) {
        for (const auto& mu2 : mus) {
            for (const auto& nu2 : nus) {
                for (int m = 0; m <= half_dim; ++m) {
                    // H.c1L^m classes vanish beyond the base dimension.
                    CohClass hc = h_cls;
                    for (int t = 0; t < m; ++t) hc = cup(hc, ctx.geo.c1L);
                    if (!prime) {
                        if (mu2.deg() >= mu.deg() + 1 && nu2.deg() >= nu.deg() && !hc.is_zero())
                            append_family(eq, ctx, 1, +1, hc, g, beta, mu2, nu2, om1);
                        if (mu2.deg() >= mu.deg() && nu2.deg() >= nu.deg() + 1 && !hc.is_zero())
                            append_family(eq, ctx, 2, +1, hc, g, beta, mu2, nu2, om1);
                        if (m + 1 <= half_dim && mu2.deg() >= mu.deg() &&
                            nu2.deg() >= nu.deg() && delta_label) {
                            CohClass dc = CohClass::unit(base, *delta_label);
                            dc = cup(dc, ctx.geo.c1L);
                            for (int t = 0; t < m; ++t) dc = cup(dc, ctx.geo.c1L);
                            if (!dc.is_zero())
                                append_family(eq, ctx, 3, -1, dc, g, beta, mu2, nu2, om1);
                        }
                    } else {
                        if (mu2.deg() >= mu.deg() && nu2.deg() >= nu.deg() && !hc.is_zero())
                            append_family(eq, ctx, 1, +1, hc, g, beta, mu2, nu2, om1);
                    }
                }
            }
        }
    }
    return eq;
}
}  // namespace

Equation relation2(const DegenerationContext& ctx, int g, const CurveClass& beta,
                   const WeightedPartition& mu, const WeightedPartition& nu,
                   const std::vector<Insertion>& omega, const std::string& delta_label) {
    return relation2_impl(ctx, g, beta, mu, nu, omega, delta_label, false);
}

Equation relation2prime(const DegenerationContext& ctx, int g, const CurveClass& beta,
                        const WeightedPartition& mu, const WeightedPartition& nu,
                        const std::vector<Insertion>& omega) {
    return relation2_impl(ctx, g, beta, mu, nu, omega, std::nullopt, true);
}

// ---------------------------------------------------------------------------
// Relative pair systems (theorem-2 style)

namespace {
struct AbsIns {
    int k = 0;
    CohClass cls;   // class on W
    bool known = true;
    int pos = 0;    // original position, for odd reordering signs
    std::string label;
};

struct SlotInfo {
    long mult;
    int dual_weight;  // unsigned dual label index on W
};

// Value of one ruled component over W: relative multiplicity m with dual
// weight w, carrying the insertions S.  Unknown shapes return nullopt.
std::optional<Rat> component_value(const PairContext& ctx, long m, const CohClass& w,
                                   const std::vector<const AbsIns*>& S, bool* vanishes) {
    *vanishes = false;
    int dimw = ctx.w_ring->dim_real;
    long lhs = 0;
    auto wd = w.homogeneous_degree();
    if (!wd) return std::nullopt;
    lhs += *wd;
    for (const auto* s : S) {
        if (!s->known) return std::nullopt;
        auto d = s->cls.homogeneous_degree();
        if (!d) return std::nullopt;
        lhs += 2 * s->k + 2 + *d;
    }
    long rhs = dimw - 2 + 2 * m + 2 * (long)S.size();
    if (lhs != rhs) {
        *vanishes = true;
        return Rat(0);
    }
    // Unramified cap with a single positive descendent of the identity:
    // string/dilaton vanishing.
    if (m == 1)
        for (const auto* s : S)
            if (s->k >= 1 && s->cls.homogeneous_degree() == 0) {
                *vanishes = true;
                return Rat(0);
            }
    if (S.empty() && m == 1) return integrate(w);
    if (m == 1 && std::all_of(S.begin(), S.end(), [](const AbsIns* s) { return s->k == 0; })) {
        CohClass prod = w;
        for (const auto* s : S) prod = cup(prod, s->cls);
        return integrate(prod);
    }
    if (S.size() == 1 && S[0]->k == m - 1 && m >= 2)
        return (Rat(1) / factorial(m - 1)) * integrate(cup(w, S[0]->cls));
    return std::nullopt;
}

// Parity of the permutation taking the odd entries from their original order
// to the assigned order.
int odd_reorder_sign(const std::vector<int>& odd_positions) {
    int inv = 0;
    for (size_t i = 0; i < odd_positions.size(); ++i)
        for (size_t j = i + 1; j < odd_positions.size(); ++j)
            if (odd_positions[i] > odd_positions[j]) ++inv;
    return inv % 2 == 0 ? 1 : -1;
}

std::vector<AbsIns> absolute_insertions(const InvariantKey& key, const PairContext& ctx,
                                        bool normalized) {
    std::vector<AbsIns> out;
    int pos = 0;
    for (const auto& p : key.nu->parts) {
        if (normalized && p.mult == 1 && p.weight == ctx.w_ring->identity) continue;
        AbsIns a;
        a.k = (int)p.mult - 1;
        a.cls = CohClass::unit(ctx.w_ring, p.weight);
        a.pos = pos++;
        a.label = ctx.w_ring->labels[(size_t)p.weight];
        out.push_back(std::move(a));
    }
    for (const auto& ins : key.omega) {
        AbsIns a;
        a.k = ins.k;
        a.pos = pos++;
        std::string inner = ins.cls;
        if (inner.size() > 3 && inner.substr(0, 3) == "i*(" && inner.back() == ')')
            inner = inner.substr(3, inner.size() - 4);
        try {
            a.cls = CohClass::unit(ctx.w_ring, inner);
            a.label = inner;
        } catch (const std::exception&) {
            a.known = false;
            a.label = ins.cls;
        }
        out.push_back(std::move(a));
    }
    return out;
}
}  // namespace

TermCoeff pair_term_coefficient(const InvariantKey& key, const WeightedPartition& eta,
                                const PairContext& ctx) {
    if (key.species != Species::RelativePair || !key.nu)
        throw std::invalid_argument("pair_term_coefficient expects a pair key");
    // (1, Id) parts never enter the component count: in the un-normalized
    // convention they contribute the exact divisor factor n_W each, applied
    // below, so the raw coefficients are the normalized ones rescaled.
    auto ins = absolute_insertions(key, ctx, /*normalized=*/true);
    SignedPartition etad = dual(eta);
    std::vector<SlotInfo> slots;
    for (const auto& p : etad.partition.parts) slots.push_back({p.mult, p.weight});

    size_t n = ins.size(), ns = slots.size();
    Rat total = 0;
    bool any_unresolved = false;
    std::vector<size_t> assign(n, 0);
    std::function<void(size_t)> rec = [&](size_t i) {
        if (i < n) {
            for (size_t s = 0; s < ns; ++s) {
                assign[i] = s;
                rec(i + 1);
            }
            return;
        }
        // Canonical representative per orbit of identical slots: assigned
        // index lists must be weakly decreasing across equal slots.
        for (size_t s = 0; s + 1 < ns; ++s) {
            if (slots[s].mult != slots[s + 1].mult ||
                slots[s].dual_weight != slots[s + 1].dual_weight)
                continue;
            std::vector<size_t> a, b;
            for (size_t j = 0; j < n; ++j) {
                if (assign[j] == s) a.push_back(j);
                if (assign[j] == s + 1) b.push_back(j);
            }
            if (a < b) return;
        }
        Rat prod = 1;
        bool unresolved = false;
        std::vector<int> odd_positions;
        for (size_t s = 0; s < ns && prod != 0; ++s) {
            std::vector<const AbsIns*> S;
            for (size_t j = 0; j < n; ++j)
                if (assign[j] == s) S.push_back(&ins[j]);
            for (const auto* a : S) {
                auto d = a->cls.homogeneous_degree();
                if (a->known && d && *d % 2 != 0) odd_positions.push_back(a->pos);
            }
            CohClass w = CohClass::unit(ctx.w_ring, slots[s].dual_weight);
            bool vanishes = false;
            auto v = component_value(ctx, slots[s].mult, w, S, &vanishes);
            if (vanishes) {
                prod = 0;
            } else if (!v) {
                unresolved = true;
            } else {
                prod *= *v;
            }
        }
        if (prod == 0) return;
        if (unresolved) {
            any_unresolved = true;
            return;
        }
        total += prod * odd_reorder_sign(odd_positions);
    };
    rec(0);
    total *= etad.sign;
    if (!ctx.normalize_divisor) {
        long nw = key.beta.intersect("W");
        for (int i = 0; i < key.nu->id_count(); ++i) total *= nw;
    }
    if (any_unresolved) {
        TermCoeff c;
        c.slots.push_back("C[" + eta.str() + "|" + key.str() + "]");
        return c;
    }
    return TermCoeff{total, {}};
}

namespace {
std::string associated_absolute_ref(const InvariantKey& key, const PairContext& ctx,
                                    bool normalized) {
    InvariantKey abs;
    abs.species = Species::Absolute;
    abs.g = key.g;
    abs.beta = key.beta;
    std::vector<Insertion> om;
    for (const auto& p : key.nu->parts) {
        if (normalized && p.mult == 1 && p.weight == ctx.w_ring->identity) continue;
        std::string lbl = ctx.w_ring->labels[(size_t)p.weight];
        om.push_back(Insertion{(int)p.mult - 1, "i*(" + lbl + ")"});
    }
    om.insert(om.end(), key.omega.begin(), key.omega.end());
    abs.omega = sort_insertions(om);
    return abs.str();
}
}  // namespace

std::vector<Equation> theorem2_system(const std::vector<InvariantKey>& pair_keys,
                                      const PairContext& ctx) {
    std::vector<Equation> out;
    for (const auto& key : pair_keys) {
        if (key.species != Species::RelativePair || !key.nu)
            throw std::invalid_argument("theorem2_system expects pair keys");
        Equation eq;
        eq.principal = key;
        Rat c = 1;
        for (const auto& p : key.nu->parts) c /= factorial(p.mult - 1);
        if (!ctx.normalize_divisor) {
            long nw = key.beta.intersect("W");
            for (int i = 0; i < key.nu->id_count(); ++i) c *= nw;
        }
        eq.principal_coeff = c;
        // The coefficient rule must reproduce the principal constant.
        TermCoeff self = pair_term_coefficient(key, *key.nu, ctx);
        if (!self.is_pure() || self.value != c)
            throw std::runtime_error("principal coefficient mismatch for " + key.str() +
                                     ": got " + self.str() + ", expected " + rat_str(c));
        eq.oracle_terms.push_back(
            {TermCoeff{1, {}}, associated_absolute_ref(key, ctx, ctx.normalize_divisor)});

        // Pure contributions with the same canonical lower key merge by
        // addition; symbolic ones stay as separate terms.
        std::map<std::string, EqTerm> merged_pure;
        std::vector<EqTerm> slotted;
        for (const auto& eta : enumerate_partitions(ctx.w_ring, key.nu->size())) {
            if (eta == *key.nu) continue;
            if (ctx.eta_filter && !ctx.eta_filter(eta, key)) continue;
            InvariantKey lower = key;
            lower.nu = eta;
            TermCoeff tc = pair_term_coefficient(key, eta, ctx);
            if (tc.is_pure() && tc.value == 0) continue;
            if (circ_less_pair(lower, key) != OrderResult::Lower) {
                eq.diagnostics.push_back("nonzero non-lower eta " + eta.str() + ": " +
                                         tc.str());
                continue;
            }
            if (ctx.canonicalize) lower.nu = ctx.canonicalize(eta);
            tc.value = -tc.value;
            if (!tc.is_pure()) {
                slotted.push_back(EqTerm{tc, lower, 0});
                continue;
            }
            auto it = merged_pure.find(lower.str());
            if (it == merged_pure.end())
                merged_pure.emplace(lower.str(), EqTerm{tc, lower, 0});
            else
                it->second.coeff.value += tc.value;
        }
        for (auto& [_, t] : merged_pure)
            if (t.coeff.value != 0) eq.terms.push_back(std::move(t));
        for (auto& t : slotted) eq.terms.push_back(std::move(t));
        if (ctx.nonprincipal)
            for (auto& np : ctx.nonprincipal(key)) eq.oracle_terms.push_back(np);
        else
            eq.oracle_terms.push_back({TermCoeff{-1, {}}, "nonprincipal:" + key.str()});
        out.push_back(std::move(eq));
    }
    return out;
}

bool simple_class_filter(const InvariantKey& key, int r, const BasisPtr& w_ring,
                         const std::set<std::string>& simple_labels) {
    auto check_ins = [&](const Insertion& ins) {
        const std::string& c = ins.cls;
        if (c.size() > 3 && c.substr(0, 3) == "i*(" && c.back() == ')') {
            std::string inner = c.substr(3, c.size() - 4);
            if (simple_labels.count(inner)) return true;
            int d = w_ring->deg(w_ring->index(inner));
            return d == r - 2;
        }
        return simple_labels.count(c) > 0;
    };
    for (const auto& ins : key.omega)
        if (!check_ins(ins)) return false;
    if (key.distinguished && !check_ins(*key.distinguished)) return false;
    auto check_part = [&](const WeightedPartition& p) {
        for (const auto& part : p.parts)
            if (!simple_labels.count(w_ring->labels[(size_t)part.weight])) return false;
        return true;
    };
    if (key.mu && !check_part(*key.mu)) return false;
    if (key.nu && !check_part(*key.nu)) return false;
    return true;
}

}  // namespace relgw
