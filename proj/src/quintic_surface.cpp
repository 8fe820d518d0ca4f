#include "relgw/quintic_surface.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace relgw {

namespace {
constexpr int kCurveGenus = 3;
constexpr long kTangency = 4;   // degree of the quartic divisor curve
constexpr int kTotalGenus = 6;  // g1 + g2 + l(mu) - 1

bool is_point(const BasisPtr& r, int w) { return r->deg(w) == 2; }
bool is_odd(const BasisPtr& r, int w) { return r->odd(w); }
}  // namespace

std::optional<std::string> quintic_config_filter(int g1, const WeightedPartition& mu) {
    const BasisPtr& r = mu.context;
    // matching of condition degrees with the expected dimension
    if (mu.deg() != 2 * (g1 + mu.length() - 5)) return "dimension";
    // at most dim |H| = 3 point conditions on the ruled side
    int points = 0;
    for (const auto& p : mu.parts)
        if (is_point(r, p.weight)) ++points;
    if (points > 3) return "linear-system-dim";
    // the complementary component is a line; only genus 0 contributes
    if (kTotalGenus + 1 - g1 - mu.length() != 0) return "genus-on-blowup";
    // odd weight on a ramified part vanishes by monodromy
    int ramified = 0;
    long max_mult = 0;
    bool odd = false;
    for (const auto& p : mu.parts) {
        if (p.mult >= 2) ++ramified;
        max_mult = std::max(max_mult, p.mult);
        if (is_odd(r, p.weight)) odd = true;
        if (p.mult >= 2 && is_odd(r, p.weight)) return "odd-on-ramified";
    }
    // tangency counts of a line against the quartic are overdetermined
    if (ramified >= 2 || max_mult >= 3 || (ramified >= 1 && odd))
        return "tangency-vanishing";
    // odd conditions pair up or the count vanishes
    std::map<int, int> a_count, b_count;
    for (const auto& p : mu.parts) {
        if (!is_odd(r, p.weight)) continue;
        int idx = p.weight;
        if (idx <= kCurveGenus)
            a_count[idx] += 1;
        else
            b_count[idx - kCurveGenus] += 1;
    }
    if (a_count != b_count) return "odd-pair-matching";
    return std::nullopt;
}

WeightedPartition quintic_canonicalize(const WeightedPartition& mu) {
    const BasisPtr& r = mu.context;
    std::map<int, int> relabel;  // old pair index -> new pair index
    int next = 1;
    auto parts = mu.parts;
    for (auto& p : parts) {
        if (!is_odd(r, p.weight)) continue;
        int pair = p.weight <= kCurveGenus ? p.weight : p.weight - kCurveGenus;
        if (!relabel.count(pair)) relabel[pair] = next++;
        p.weight = p.weight <= kCurveGenus ? relabel[pair] : relabel[pair] + kCurveGenus;
    }
    return WeightedPartition::make(r, parts);
}

int quintic_convention_sign(const WeightedPartition& mu) {
    const BasisPtr& r = mu.context;
    // key (pair rank, member rank) of the pair-ordered normalization
    std::vector<std::pair<int, int>> keys;
    for (const auto& p : mu.parts) {
        if (!is_odd(r, p.weight)) continue;
        auto d = dual_signed_label(r, p.weight);
        if (!d) throw std::runtime_error("odd weight without a dual label");
        int pair_rank = std::min(p.weight, d->index);
        int member_rank = d->sign > 0 ? 0 : 1;  // positive-pairing member first
        for (long m = 0; m < p.mult; ++m) keys.push_back({pair_rank, member_rank});
    }
    int inv = 0;
    for (size_t i = 0; i < keys.size(); ++i)
        for (size_t j = i + 1; j < keys.size(); ++j)
            if (keys[i] > keys[j]) ++inv;
    return inv % 2 == 0 ? 1 : -1;
}

QuinticData quintic_data() {
    QuinticData d;
    d.curve = ring_curve(kCurveGenus);
    {
        auto m = std::make_shared<CurveClassModel>();
        m->name = "k3-side";
        m->rank = 1;
        m->cone_generators = {{1}};
        m->positive_form = {1};
        m->intersection_forms["W"] = {kTangency};
        m->validate();
        d.k3_model = m;
    }
    {
        auto m = std::make_shared<CurveClassModel>();
        m->name = "ruled-side";
        m->rank = 2;
        m->cone_generators = {{1, 0}, {0, 1}};
        m->positive_form = {1, 1};
        m->intersection_forms["W"] = {kTangency, 1};
        m->validate();
        d.p_model = m;
    }
    {
        auto m = std::make_shared<CurveClassModel>();
        m->name = "quintic-total";
        m->rank = 2;
        m->cone_generators = {{1, 0}, {0, 1}};
        m->positive_form = {1, 1};
        m->validate();
        d.total_model = m;
    }
    std::map<std::string, size_t> class_index;
    for (int g1 = 0; g1 <= kTotalGenus; ++g1) {
        for (const auto& mu : enumerate_partitions(d.curve, kTangency)) {
            if (quintic_config_filter(g1, mu)) continue;
            d.configs.push_back({g1, mu});
            WeightedPartition rep = quintic_canonicalize(mu);
            std::string sig = std::to_string(g1) + rep.str();
            auto it = class_index.find(sig);
            if (it == class_index.end()) {
                class_index[sig] = d.classes.size();
                d.classes.push_back({g1, rep});
                d.multiplicities.push_back(1);
            } else {
                d.multiplicities[it->second] += 1;
            }
        }
    }
    return d;
}

InvariantKey k3_pair_key(const QuinticData& d, const QuinticConfig& c) {
    InvariantKey k;
    k.species = Species::RelativePair;
    k.g = c.g1;
    k.beta = CurveClass::make(d.k3_model, {1});
    k.nu = c.mu;
    k.validate();
    return k;
}

InvariantKey p_pair_key(const QuinticData& d, const QuinticConfig& c) {
    InvariantKey k;
    k.species = Species::RelativePair;
    k.g = c.g1;
    k.beta = CurveClass::make(d.p_model, {1, 0});
    k.nu = c.mu;
    k.validate();
    return k;
}

namespace {
PairContext make_pair_context(const QuinticData& d, const ModelPtr& model,
                              const std::string& np_prefix) {
    PairContext ctx;
    ctx.w_ring = d.curve;
    ctx.model = model;
    ctx.normalize_divisor = true;
    ctx.eta_filter = [](const WeightedPartition& eta, const InvariantKey& key) {
        return !quintic_config_filter(key.g, eta).has_value();
    };
    ctx.canonicalize = [](const WeightedPartition& eta) { return quintic_canonicalize(eta); };
    ctx.nonprincipal = [np_prefix](const InvariantKey& key) {
        std::vector<EqOracleTerm> out;
        out.push_back({TermCoeff{-1, {}},
                       np_prefix + "[g=" + std::to_string(key.g) + ",nu=" + key.nu->str() + "]"});
        return out;
    };
    return ctx;
}

std::string bc4_ref(const QuinticConfig& c) {
    return "BC4[g=" + std::to_string(c.g1) + ",mu=" + c.mu.str() + "]";
}
}  // namespace

QuinticSystem build_quintic_system(bool alternate_p_mode, const OracleTable* p_absolutes) {
    QuinticSystem sys;
    sys.data = quintic_data();
    sys.alternate_p_mode = alternate_p_mode;
    const QuinticData& d = sys.data;

    // --- K3-side pair system -------------------------------------------------
    std::vector<InvariantKey> k3_keys;
    for (const auto& c : d.classes) k3_keys.push_back(k3_pair_key(d, c));
    PairContext k3_ctx = make_pair_context(d, d.k3_model, "RuledInf");
    auto k3_eqs = theorem2_system(k3_keys, k3_ctx);
    for (auto& e : k3_eqs) sys.equations.push_back(std::move(e));

    // K3 absolute invariants in positive classes vanish.
    for (const auto& eq : sys.equations)
        for (const auto& ot : eq.oracle_terms)
            if (ot.ref.rfind("Abs[", 0) == 0)
                sys.oracles.set(ot.ref, 0, "recorded: quartic K3 absolute invariants vanish");

    // Localization values of the rigid ruled comparison terms.
    for (const auto& c : d.classes) {
        std::string ref =
            "RuledInf[g=" + std::to_string(c.g1) + ",nu=" + c.mu.str() + "]";
        Rat v = 0;
        if (c.g1 == 3 && c.mu.id_count() == 2) v = 1;  // the double-point shape
        sys.oracles.set(ref, v, "localization on the ruled side, infinity divisor");
    }

    // --- Ruled-side pair values ---------------------------------------------
    std::vector<InvariantKey> p_keys;
    for (const auto& c : d.classes) p_keys.push_back(p_pair_key(d, c));
    if (!alternate_p_mode) {
        // Recorded solutions of the analogous ruled-side system (zero at the
        // higher genus, consistent with the assembled arithmetic).  The three
        // surviving genus-3 shapes are distinguished by their identity count:
        // two ids -> 7, one id (one odd pair) -> -3, no id (two odd pairs) -> 1.
        for (size_t i = 0; i < d.classes.size(); ++i) {
            const auto& c = d.classes[i];
            Rat v = 0;
            if (c.g1 == 3) {
                switch (c.mu.id_count()) {
                    case 2: v = 7; break;
                    case 1: v = -3; break;
                    default: v = 1; break;
                }
            }
            // stored values are in the pair-ordered normalization
            v *= quintic_convention_sign(c.mu);
            sys.oracles.set(p_keys[i].str(), v, "recorded: ruled-side pair solutions");
        }
    } else {
        PairContext p_ctx = make_pair_context(d, d.p_model, "RuledInfP");
        auto p_eqs = theorem2_system(p_keys, p_ctx);
        // absolute oracles on the ruled side: stored defaults, overridable
        std::map<std::string, std::pair<Rat, int>> defaults;  // ref -> (value, sign)
        for (size_t i = 0; i < d.classes.size(); ++i) {
            const auto& c = d.classes[i];
            Rat v = 0;
            if (c.g1 == 3) {
                if (c.mu.id_count() == 2) v = 7;
                else if (c.mu.id_count() == 1) v = 4;
                else v = 2;
            }
            // the associated absolute reference of the i-th principal
            for (const auto& ot : p_eqs[i].oracle_terms)
                if (ot.ref.rfind("Abs[", 0) == 0)
                    defaults[ot.ref] = {v, quintic_convention_sign(c.mu)};
        }
        // User-supplied and stored values are in the pair-ordered
        // normalization; the system keys carry the storage-order sign.
        for (const auto& [ref, vs] : defaults) {
            if (p_absolutes) {
                if (auto user = p_absolutes->get(ref)) {
                    sys.oracles.set(ref, *user * vs.second, "user: ruled-side absolute");
                    continue;
                }
            }
            sys.oracles.set(ref, vs.first * vs.second, "stored: ruled-side absolute defaults");
        }
        for (const auto& eq : p_eqs)
            for (const auto& ot : eq.oracle_terms)
                if (ot.ref.rfind("RuledInfP[", 0) == 0)
                    sys.oracles.set(ot.ref, 0, "stored: ruled-side comparison terms vanish");
        for (auto& e : p_eqs) sys.equations.push_back(std::move(e));
    }

    // --- Blow-up side oracles ------------------------------------------------
    for (const auto& c : d.classes) {
        if (c.g1 == 3)
            sys.oracles.set(bc4_ref(c), quintic_convention_sign(c.mu),
                            "recorded: blow-up side genus-0 values (pair-ordered value 1)");
        // higher-genus references stay absent: they multiply vanishing values
    }

    // --- Blow-up equation ----------------------------------------------------
    {
        Equation eq;
        InvariantKey full;
        full.species = Species::RelativePair;
        full.g = kTotalGenus;
        full.beta = CurveClass::make(d.total_model, {0, 1});
        full.nu = WeightedPartition::empty(d.curve);
        eq.principal = full;
        eq.principal_coeff = 1;
        InvariantKey babs;
        babs.species = Species::Absolute;
        babs.g = kTotalGenus;
        babs.beta = CurveClass::make(d.total_model, {0, 1});
        sys.oracles.set(babs.str(), 1, "recorded: blow-up absolute equals 1");
        eq.oracle_terms.push_back({TermCoeff{1, {}}, babs.str()});
        for (size_t i = 0; i < d.classes.size(); ++i) {
            TermCoeff tc;
            tc.value = -Rat(d.multiplicities[i]);
            tc.slots.push_back(bc4_ref(d.classes[i]));
            eq.terms.push_back({tc, p_pair_key(d, d.classes[i]), 0});
        }
        sys.equations.push_back(std::move(eq));
    }

    // --- Assembled total-space equation --------------------------------------
    {
        Equation eq;
        InvariantKey s5;
        s5.species = Species::Absolute;
        s5.g = kTotalGenus;
        s5.beta = CurveClass::make(d.total_model, {1, 0});
        eq.principal = s5;
        eq.principal_coeff = 1;
        InvariantKey full;
        full.species = Species::RelativePair;
        full.g = kTotalGenus;
        full.beta = CurveClass::make(d.total_model, {0, 1});
        full.nu = WeightedPartition::empty(d.curve);
        eq.terms.push_back({TermCoeff{1, {}}, full, 0});
        for (size_t i = 0; i < d.classes.size(); ++i) {
            TermCoeff tc;
            tc.value = Rat(d.multiplicities[i]);
            tc.slots.push_back(bc4_ref(d.classes[i]));
            eq.terms.push_back({tc, k3_pair_key(d, d.classes[i]), 0});
        }
        sys.equations.push_back(std::move(eq));
    }
    return sys;
}

QuinticReport quintic_surface_compute(bool alternate_p_mode) {
    QuinticSystem sys = build_quintic_system(alternate_p_mode);
    SolveResult sol = solve(sys.equations, sys.oracles);
    verify(sys.equations, sol, sys.oracles);
    InvariantKey s5;
    s5.species = Species::Absolute;
    s5.g = kTotalGenus;
    s5.beta = CurveClass::make(sys.data.total_model, {1, 0});
    QuinticReport rep;
    rep.result = sol.values.at(s5.str());
    rep.solution = sol;
    const QuinticData& d = sys.data;
    for (size_t i = 0; i < d.classes.size(); ++i) {
        const auto& c = d.classes[i];
        int sgn = quintic_convention_sign(c.mu);
        Rat k3v = sol.values.count(k3_pair_key(d, c).str())
                      ? sol.values.at(k3_pair_key(d, c).str())
                      : Rat(0);
        std::string pk = p_pair_key(d, c).str();
        Rat pv = sol.values.count(pk) ? sol.values.at(pk) : *sys.oracles.get(pk);
        rep.k3_values.push_back(k3v * sgn);
        rep.p_values.push_back(pv * sgn);
        if (c.g1 == 3) rep.bc4_values.push_back(*sys.oracles.get(
            "BC4[g=" + std::to_string(c.g1) + ",mu=" + c.mu.str() + "]") * sgn);
    }
    const Rat gauge_theoretic = -1;  // independently recorded count
    std::ostringstream os;
    os << "configurations (genus, partition, multiplicity):\n";
    for (size_t i = 0; i < d.classes.size(); ++i)
        os << "  g1=" << d.classes[i].g1 << "  " << d.classes[i].mu.str() << "  x"
           << d.multiplicities[i] << "\n";
    os << "relative invariants (pair-ordered normalization):\n";
    for (size_t i = 0; i < d.classes.size(); ++i)
        os << "  class " << i + 1 << ": quartic side " << rat_str(rep.k3_values[i])
           << ", ruled side " << rat_str(rep.p_values[i])
           << (i < rep.bc4_values.size()
                   ? ", blow-up side " + rat_str(rep.bc4_values[i])
                   : std::string())
           << "\n";
    os << "assembly: 1";
    Rat assembled = 1;
    for (size_t i = 0; i < rep.bc4_values.size(); ++i) {
        Rat t = Rat(d.multiplicities[i]) * (rep.k3_values[i] - rep.p_values[i]) *
                rep.bc4_values[i];
        assembled += t;
        os << " + " << d.multiplicities[i] << "*(" << rat_str(rep.k3_values[i]) << " - "
           << rat_str(rep.p_values[i]) << ")*" << rat_str(rep.bc4_values[i]);
    }
    os << " = " << rat_str(assembled) << "\n";
    os << "solved values (storage normalization):\n";
    for (const auto& k : sol.order)
        os << "  " << k << " = " << rat_str(sol.values.at(k)) << "\n";
    os << "cross-check (gauge-theoretic count): " << rat_str(gauge_theoretic) << " -> "
       << (rep.result == gauge_theoretic ? "match" : "MISMATCH") << "\n";
    os << "result = " << rat_str(rep.result) << "\n";
    rep.text = os.str();
    return rep;
}

}  // namespace relgw
