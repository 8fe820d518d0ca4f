#include "relgw/rubber.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <sstream>
#include <stdexcept>

namespace relgw {

std::string RubberTerm::str() const {
    return coeff.str() + " * " + (key ? key->str() : std::string("1"));
}

bool RubberExpr::resolved() const {
    return std::all_of(terms.begin(), terms.end(),
                       [](const RubberTerm& t) { return !t.key.has_value(); });
}

std::string RubberExpr::str() const {
    std::string out;
    for (const auto& t : terms) {
        if (!out.empty()) out += " + ";
        out += t.str();
    }
    return out.empty() ? "0" : out;
}

namespace {

std::string identity_label(const RubberContext& ctx) {
    return ctx.geo.bundle->labels[(size_t)ctx.geo.bundle->identity];
}

bool is_tau11(const RubberContext& ctx, const Insertion& ins) {
    return ins.k == 1 && ins.cls == identity_label(ctx);
}

// Bundle class named by an insertion label; understands the [Dinf] aliases
// produced by the degeneration module.
CohClass bundle_class(const RubberContext& ctx, const std::string& cls) {
    const BundleGeometry& geo = ctx.geo;
    if (cls == "[Dinf]") return geo.dinf();
    if (cls.size() > 7 && cls.substr(cls.size() - 7) == "*[Dinf]")
        return geo.times_dinf(CohClass::unit(geo.base, cls.substr(0, cls.size() - 7)));
    return CohClass::unit(geo.bundle, cls);
}

// Appends coeff * (key with omega[idx] replaced by tau_k(label)) for every
// label appearing in cls.
void emit_with_class(std::vector<RubberTerm>& out, const RubberContext& ctx,
                     const TermCoeff& coeff, const InvariantKey& key, size_t idx, int k,
                     const CohClass& cls) {
    for (size_t i = 0; i < ctx.geo.bundle->size(); ++i) {
        Rat c = cls.coeff((int)i);
        if (c == 0) continue;
        InvariantKey nk = key;
        nk.omega[idx] = Insertion{k, ctx.geo.bundle->labels[i]};
        nk.omega = sort_insertions(nk.omega);
        TermCoeff tc = coeff;
        tc.value *= c;
        out.push_back({tc, nk});
    }
}

long dilaton_factor(const InvariantKey& key, size_t without_idx) {
    long n = (long)key.omega.size() - (without_idx < key.omega.size() ? 1 : 0);
    return 2 * key.g - 2 + n + (key.mu ? key.mu->length() : 0) +
           (key.nu ? key.nu->length() : 0);
}

// Replaces the weight of nu part j by (weight . H); returns the resulting
// partitions with coefficients, skipping vanishing odd-repeat shapes.
std::vector<std::pair<Rat, WeightedPartition>> weight_times_h(const RubberContext& ctx,
                                                              const WeightedPartition& nu,
                                                              size_t j) {
    std::vector<std::pair<Rat, WeightedPartition>> out;
    const BasisPtr& base = ctx.geo.base;
    CohClass prod = cup(CohClass::unit(base, nu.parts[j].weight),
                        CohClass::unit(base, ctx.ample_label));
    for (size_t w = 0; w < base->size(); ++w) {
        Rat c = prod.coeff((int)w);
        if (c == 0) continue;
        auto parts = nu.parts;
        parts[j].weight = (int)w;
        // identical odd parts make the bracket vanish
        bool zero = false;
        for (size_t a = 0; a < parts.size() && !zero; ++a)
            for (size_t b = a + 1; b < parts.size(); ++b)
                if (parts[a] == parts[b] && base->odd(parts[a].weight)) {
                    zero = true;
                    break;
                }
        if (zero) continue;
        out.push_back({c, WeightedPartition::make(base, parts)});
    }
    return out;
}

void check_rubber(const InvariantKey& key) {
    if (key.species != Species::Rubber || !key.mu || !key.nu)
        throw std::invalid_argument("expected a rubber key: " + key.str());
}

}  // namespace

RubberExpr dilaton(const RubberContext& ctx, const InvariantKey& key) {
    check_rubber(key);
    size_t idx = key.omega.size();
    for (size_t i = 0; i < key.omega.size(); ++i)
        if (is_tau11(ctx, key.omega[i])) {
            idx = i;
            break;
        }
    if (idx == key.omega.size())
        throw std::invalid_argument("dilaton needs a tau_1(1) insertion");
    InvariantKey nk = key;
    nk.omega.erase(nk.omega.begin() + (long)idx);
    RubberExpr e;
    e.terms.push_back({TermCoeff{Rat(dilaton_factor(key, idx)), {}}, nk});
    return e;
}

RubberExpr inverse_dilaton(const RubberContext& ctx, const InvariantKey& key) {
    check_rubber(key);
    InvariantKey nk = key;
    nk.omega.push_back(Insertion{1, identity_label(ctx)});
    nk.omega = sort_insertions(nk.omega);
    long f = dilaton_factor(nk, nk.omega.size());
    f -= 1;  // factor of the extended bracket counts only the other markings
    if (f <= 0) throw std::runtime_error("nonpositive dilaton factor for " + key.str());
    RubberExpr e;
    e.terms.push_back({TermCoeff{Rat(1) / f, {}}, nk});
    return e;
}

RubberExpr divisor(const RubberContext& ctx, const InvariantKey& key, size_t idx) {
    check_rubber(key);
    const Insertion& ins = key.omega.at(idx);
    if (ins.k != 0 || ins.cls != ctx.ample_label)
        throw std::invalid_argument("divisor expects tau_0(H) at the given marking");
    RubberExpr e;
    // divisor multiple of the stripped bracket
    InvariantKey stripped = key;
    stripped.omega.erase(stripped.omega.begin() + (long)idx);
    e.terms.push_back({TermCoeff{Rat(key.beta.intersect(ctx.ample_form)), {}}, stripped});
    // descendent corrections tau_{k-1}(gamma . H)
    CohClass h = CohClass::unit(ctx.geo.bundle, ctx.ample_label);
    for (size_t j = 0; j < stripped.omega.size(); ++j) {
        const Insertion& oj = stripped.omega[j];
        if (oj.k < 1) continue;
        CohClass cls = cup(bundle_class(ctx, oj.cls), h);
        emit_with_class(e.terms, ctx, TermCoeff{1, {}}, stripped, j, oj.k - 1, cls);
    }
    // relative corrections at psi-1
    if (key.psi_inf_power >= 1) {
        for (size_t j = 0; j < (size_t)stripped.nu->length(); ++j) {
            Rat mult = Rat(stripped.nu->parts[j].mult);
            for (auto& [c, nu2] : weight_times_h(ctx, *stripped.nu, j)) {
                InvariantKey nk = stripped;
                nk.nu = nu2;
                nk.psi_inf_power -= 1;
                e.terms.push_back({TermCoeff{mult * c, {}}, nk});
            }
        }
    }
    return e;
}

RubberExpr inverse_divisor(const RubberContext& ctx, const InvariantKey& key) {
    check_rubber(key);
    long n = key.beta.intersect(ctx.ample_form);
    if (n <= 0)
        throw std::runtime_error("inverse_divisor needs int_{pi_* beta} H > 0: " + key.str());
    InvariantKey ext = key;
    ext.omega.push_back(Insertion{0, ctx.ample_label});
    ext.omega = sort_insertions(ext.omega);
    size_t idx = 0;
    while (!(ext.omega[idx].k == 0 && ext.omega[idx].cls == ctx.ample_label)) ++idx;
    RubberExpr rhs = divisor(ctx, ext, idx);
    RubberExpr e;
    e.terms.push_back({TermCoeff{Rat(1) / n, {}}, ext});
    for (auto& t : rhs.terms) {
        if (t.key && *t.key == key) continue;  // the principal multiple
        t.coeff.value /= -n;
        e.terms.push_back(std::move(t));
    }
    return e;
}

RubberExpr trr_step(const RubberContext& ctx, const InvariantKey& key, size_t idx) {
    check_rubber(key);
    if (key.psi_inf_power < 1) throw std::invalid_argument("trr_step needs psi >= 1");
    const Insertion pivot = key.omega.at(idx);
    RubberExpr e;
    // c1(L) twist at the pivot, one cotangent power fewer
    {
        InvariantKey nk = key;
        nk.psi_inf_power -= 1;
        CohClass cls = cup(bundle_class(ctx, pivot.cls), ctx.geo.lift(ctx.geo.c1L));
        emit_with_class(e.terms, ctx, TermCoeff{1, {}}, nk, idx, pivot.k, cls);
    }
    // splitting terms: the pivot side rigidifies to a type II value
    std::vector<Insertion> rest = key.omega;
    rest.erase(rest.begin() + (long)idx);
    std::vector<std::vector<int>> masks;
    for (size_t mask = 0; mask < (size_t{1} << rest.size()); ++mask) {
        std::vector<int> side2;
        for (size_t i = 0; i < rest.size(); ++i)
            if (mask & (size_t{1} << i)) side2.push_back((int)i);
        masks.push_back(std::move(side2));
    }
    const BasisPtr& base = ctx.geo.base;
    for (const auto& beta1 : effective_classes_below(key.beta)) {
        CurveClass beta2 = key.beta - beta1;
        long m = beta1.intersect("Dinf");
        if (m <= 0 || m != beta2.intersect("D0")) continue;
        if (beta1.intersect("D0") != key.mu->size()) continue;
        if (beta2.intersect("Dinf") != key.nu->size()) continue;
        for (const auto& eta : enumerate_partitions(base, m)) {
            SignedPartition etad = dual(eta);
            for (int g1 = 0; g1 + eta.length() - 1 <= key.g; ++g1) {
                int g2 = key.g - g1 - eta.length() + 1;
                if (g2 < 0) continue;
                for (const auto& side2 : masks) {
                    std::vector<Insertion> om1, om2;
                    size_t p2 = 0;
                    for (size_t i = 0; i < rest.size(); ++i) {
                        if (p2 < side2.size() && (int)i == side2[p2]) {
                            om2.push_back(rest[i]);
                            ++p2;
                        } else {
                            om1.push_back(rest[i]);
                        }
                    }
                    // rigid first factor (Lemma-style [D0] twist at the pivot)
                    CohClass d0cls = cup(bundle_class(ctx, pivot.cls), ctx.geo.d0());
                    for (size_t li = 0; li < ctx.geo.bundle->size(); ++li) {
                        Rat c = d0cls.coeff((int)li);
                        if (c == 0) continue;
                        InvariantKey t2;
                        t2.species = Species::TypeII;
                        t2.g = g1;
                        t2.beta = beta1;
                        t2.mu = key.mu;
                        t2.nu = eta;
                        t2.distinguished = Insertion{pivot.k, ctx.geo.bundle->labels[li]};
                        t2.omega = sort_insertions(om1);
                        t2.connected = false;
                        InvariantKey rb;
                        rb.species = Species::Rubber;
                        rb.g = g2;
                        rb.beta = beta2;
                        rb.mu = etad.partition;
                        rb.nu = key.nu;
                        rb.omega = sort_insertions(om2);
                        rb.psi_inf_power = key.psi_inf_power - 1;
                        rb.connected = false;
                        TermCoeff tc;
                        tc.value = c * Rat(etad.sign) * eta.zee();
                        tc.slots.push_back("val:" + t2.str());
                        e.terms.push_back({tc, rb});
                    }
                }
            }
        }
    }
    return e;
}

RubberExpr rigidify(const RubberContext& ctx, const InvariantKey& key, size_t idx) {
    check_rubber(key);
    if (key.psi_inf_power != 0) throw std::invalid_argument("rigidify needs psi = 0");
    const Insertion pivot = key.omega.at(idx);
    CohClass cls = cup(bundle_class(ctx, pivot.cls), ctx.geo.d0());
    RubberExpr e;
    for (size_t li = 0; li < ctx.geo.bundle->size(); ++li) {
        Rat c = cls.coeff((int)li);
        if (c == 0) continue;
        InvariantKey t2;
        t2.species = Species::TypeII;
        t2.g = key.g;
        t2.beta = key.beta;
        t2.mu = key.mu;
        t2.nu = key.nu;
        t2.distinguished = Insertion{pivot.k, ctx.geo.bundle->labels[li]};
        t2.omega = key.omega;
        t2.omega.erase(t2.omega.begin() + (long)idx);
        t2.omega = sort_insertions(t2.omega);
        t2.connected = key.connected;
        TermCoeff tc;
        tc.value = c;
        tc.slots.push_back("val:" + t2.str());
        e.terms.push_back({tc, std::nullopt});
    }
    return e;
}

std::string rubber_measure(const InvariantKey& key) {
    long sumk = 0;
    bool has11 = false;
    for (const auto& ins : key.omega) {
        sumk += ins.k;
        if (ins.k == 1) has11 = true;  // conservative: any tau_1 counts
    }
    std::ostringstream os;
    os << "(" << key.psi_inf_power << "," << (has11 ? 0 : 1) << "," << sumk << ")";
    return os.str();
}

namespace {
// Pivot choice for the non-fiber strategy: prefer a tau_0 insertion of a
// lifted even class (H-chain markings), falling back to the first insertion.
std::optional<size_t> pick_pivot(const RubberContext& ctx, const InvariantKey& key) {
    for (size_t i = 0; i < key.omega.size(); ++i) {
        const auto& ins = key.omega[i];
        if (ins.k == 0 && ins.cls.find("[D") == std::string::npos) {
            int li = ctx.geo.bundle->index(ins.cls);
            if (ctx.geo.bundle->deg(li) % 2 == 0 && ctx.geo.bundle->deg(li) > 0) return i;
        }
    }
    if (!key.omega.empty()) return size_t{0};
    return std::nullopt;
}

std::optional<size_t> find_tau11(const RubberContext& ctx, const InvariantKey& key) {
    for (size_t i = 0; i < key.omega.size(); ++i)
        if (is_tau11(ctx, key.omega[i])) return i;
    return std::nullopt;
}
}  // namespace

ReduceResult reduce(const RubberContext& ctx, const InvariantKey& key,
                    RubberStrategy strategy) {
    ReduceResult res;
    std::deque<RubberTerm> work;
    work.push_back({TermCoeff{1, {}}, key});
    int steps = 0;
    while (!work.empty()) {
        if (++steps > 200000) throw std::runtime_error("rubber reduction exceeded step cap");
        RubberTerm t = std::move(work.front());
        work.pop_front();
        if (!t.key) {
            res.expr.terms.push_back(std::move(t));
            continue;
        }
        const InvariantKey& k = *t.key;
        std::string before = rubber_measure(k);
        TraceEntry tr;
        tr.subject = k.str();
        tr.measure_before = before;
        RubberExpr step;
        if (k.psi_inf_power >= 1) {
            if (strategy == RubberStrategy::FiberClass || k.beta.is_fiber_multiple()) {
                auto p = find_tau11(ctx, k);
                if (p) {
                    tr.rule = "trr";
                    step = trr_step(ctx, k, *p);
                } else if (dilaton_factor(k, k.omega.size()) > 0) {
                    tr.rule = "inverse_dilaton+trr";
                    RubberExpr d = inverse_dilaton(ctx, k);
                    const RubberTerm& dt = d.terms.front();
                    auto q = find_tau11(ctx, *dt.key);
                    RubberExpr inner = trr_step(ctx, *dt.key, *q);
                    for (auto& it : inner.terms) {
                        it.coeff = it.coeff * dt.coeff;
                        step.terms.push_back(std::move(it));
                    }
                } else {
                    // zero dilaton factor (g = 0 with a single relative point on
                    // each side and no insertions): fall back to the divisor
                    // equation, which only needs int_{pi_* beta} H > 0
                    tr.rule = "inverse_divisor+trr";
                    RubberExpr d = inverse_divisor(ctx, k);
                    for (auto& dt : d.terms) {
                        if (dt.key && dt.key->psi_inf_power == k.psi_inf_power &&
                            dt.key->omega.size() > k.omega.size()) {
                            size_t q = 0;
                            while (!(dt.key->omega[q].k == 0 &&
                                     dt.key->omega[q].cls == ctx.ample_label))
                                ++q;
                            RubberExpr inner = trr_step(ctx, *dt.key, q);
                            for (auto& it : inner.terms) {
                                it.coeff = it.coeff * dt.coeff;
                                step.terms.push_back(std::move(it));
                            }
                        } else {
                            step.terms.push_back(std::move(dt));
                        }
                    }
                }
            } else {
                auto p = pick_pivot(ctx, k);
                if (p) {
                    tr.rule = "trr";
                    step = trr_step(ctx, k, *p);
                } else {
                    tr.rule = "inverse_divisor+trr";
                    RubberExpr d = inverse_divisor(ctx, k);
                    for (auto& dt : d.terms) {
                        if (dt.key && dt.key->psi_inf_power == k.psi_inf_power &&
                            dt.key->omega.size() > k.omega.size()) {
                            size_t q = 0;
                            while (!(dt.key->omega[q].k == 0 &&
                                     dt.key->omega[q].cls == ctx.ample_label))
                                ++q;
                            RubberExpr inner = trr_step(ctx, *dt.key, q);
                            for (auto& it : inner.terms) {
                                it.coeff = it.coeff * dt.coeff;
                                step.terms.push_back(std::move(it));
                            }
                        } else {
                            step.terms.push_back(std::move(dt));
                        }
                    }
                }
            }
        } else {
            std::optional<size_t> p;
            if (strategy == RubberStrategy::NonFiber && !k.beta.is_fiber_multiple())
                p = pick_pivot(ctx, k);
            else if (!k.omega.empty())
                p = 0;
            if (p) {
                tr.rule = "rigidify";
                step = rigidify(ctx, k, *p);
            } else if (dilaton_factor(k, k.omega.size()) > 0) {
                tr.rule = "inverse_dilaton+rigidify";
                RubberExpr d = inverse_dilaton(ctx, k);
                const RubberTerm& dt = d.terms.front();
                auto q = find_tau11(ctx, *dt.key);
                RubberExpr inner = rigidify(ctx, *dt.key, *q);
                for (auto& it : inner.terms) {
                    it.coeff = it.coeff * dt.coeff;
                    step.terms.push_back(std::move(it));
                }
            } else {
                tr.rule = "inverse_divisor+rigidify";
                RubberExpr d = inverse_divisor(ctx, k);
                for (auto& dt : d.terms) {
                    if (dt.key && dt.key->omega.size() > k.omega.size()) {
                        size_t q = 0;
                        while (!(dt.key->omega[q].k == 0 &&
                                 dt.key->omega[q].cls == ctx.ample_label))
                            ++q;
                        RubberExpr inner = rigidify(ctx, *dt.key, q);
                        for (auto& it : inner.terms) {
                            it.coeff = it.coeff * dt.coeff;
                            step.terms.push_back(std::move(it));
                        }
                    } else {
                        step.terms.push_back(std::move(dt));
                    }
                }
            }
        }
        std::string worst;
        for (auto& st : step.terms) {
            st.coeff = st.coeff * t.coeff;
            if (st.coeff.is_zero()) continue;
            if (st.key) {
                std::string ms = rubber_measure(*st.key);
                if (ms > worst) worst = ms;
            }
            work.push_back(std::move(st));
        }
        tr.measure_after = worst;
        tr.produced = (int)step.terms.size();
        res.trace.push_back(std::move(tr));
    }
    return res;
}

}  // namespace relgw
