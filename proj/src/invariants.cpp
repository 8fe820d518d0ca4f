#include "relgw/invariants.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <sstream>
#include <stdexcept>

namespace relgw {

// ---------------------------------------------------------------------------
// Curve classes

void CurveClassModel::validate() const {
    auto dot = [&](const std::vector<long>& f, const std::vector<long>& v) {
        long s = 0;
        for (size_t i = 0; i < f.size(); ++i) s += f[i] * v[i];
        return s;
    };
    if ((int)positive_form.size() != rank)
        throw std::runtime_error("positive_form rank mismatch");
    for (const auto& g : cone_generators) {
        if ((int)g.size() != rank) throw std::runtime_error("generator rank mismatch");
        if (dot(positive_form, g) <= 0)
            throw std::runtime_error("positive_form not strictly positive on a generator");
    }
    for (const auto& [name, f] : intersection_forms)
        if ((int)f.size() != rank)
            throw std::runtime_error("intersection form rank mismatch: " + name);
    if (!fiber_coords.empty() && (int)fiber_coords.size() != rank)
        throw std::runtime_error("fiber class rank mismatch");
}

CurveClass CurveClass::make(ModelPtr m, std::vector<long> coords) {
    if ((int)coords.size() != m->rank) throw std::runtime_error("curve class rank mismatch");
    return CurveClass{std::move(m), std::move(coords)};
}

CurveClass CurveClass::zero(ModelPtr m) {
    std::vector<long> c((size_t)m->rank, 0);
    return CurveClass{std::move(m), std::move(c)};
}

long CurveClass::intersect(const std::string& divisor) const {
    auto it = model->intersection_forms.find(divisor);
    if (it == model->intersection_forms.end())
        throw std::runtime_error("no intersection form declared for divisor " + divisor);
    long s = 0;
    for (size_t i = 0; i < coords.size(); ++i) s += it->second[i] * coords[i];
    return s;
}

bool CurveClass::is_zero() const {
    return std::all_of(coords.begin(), coords.end(), [](long c) { return c == 0; });
}

bool CurveClass::is_fiber_multiple() const {
    if (is_zero()) return true;
    if (model->fiber_coords.empty()) return false;
    // coords == t * fiber for a positive integer t
    long t = 0;
    for (size_t i = 0; i < coords.size(); ++i) {
        long f = model->fiber_coords[i];
        if (f == 0) {
            if (coords[i] != 0) return false;
        } else {
            if (coords[i] % f != 0) return false;
            long ti = coords[i] / f;
            if (t == 0)
                t = ti;
            else if (t != ti)
                return false;
        }
    }
    return t > 0;
}

std::string CurveClass::str() const {
    std::ostringstream os;
    os << "(";
    for (size_t i = 0; i < coords.size(); ++i) {
        if (i) os << ",";
        os << coords[i];
    }
    os << ")";
    return os.str();
}

static void check_model(const CurveClass& a, const CurveClass& b) {
    if (a.model != b.model) throw std::runtime_error("curve-class arithmetic across models");
}

CurveClass operator+(const CurveClass& a, const CurveClass& b) {
    check_model(a, b);
    CurveClass r = a;
    for (size_t i = 0; i < r.coords.size(); ++i) r.coords[i] += b.coords[i];
    return r;
}

CurveClass operator-(const CurveClass& a, const CurveClass& b) {
    check_model(a, b);
    CurveClass r = a;
    for (size_t i = 0; i < r.coords.size(); ++i) r.coords[i] -= b.coords[i];
    return r;
}

namespace {
long form_dot(const std::vector<long>& f, const std::vector<long>& v) {
    long s = 0;
    for (size_t i = 0; i < f.size(); ++i) s += f[i] * v[i];
    return s;
}

bool eff_dfs(const CurveClassModel& m, std::vector<long> coords, size_t gi) {
    if (std::all_of(coords.begin(), coords.end(), [](long c) { return c == 0; })) return true;
    if (gi >= m.cone_generators.size()) return false;
    long p = form_dot(m.positive_form, coords);
    if (p <= 0) return false;
    const auto& g = m.cone_generators[gi];
    long gp = form_dot(m.positive_form, g);
    for (long k = 0; k * gp <= p; ++k) {
        std::vector<long> rest = coords;
        for (size_t i = 0; i < rest.size(); ++i) rest[i] -= k * g[i];
        if (eff_dfs(m, rest, gi + 1)) return true;
    }
    return false;
}
}  // namespace

bool effective(const CurveClass& beta) { return eff_dfs(*beta.model, beta.coords, 0); }

bool class_less(const CurveClass& a, const CurveClass& b) {
    check_model(a, b);
    CurveClass d = b - a;
    return !d.is_zero() && effective(d);
}

std::vector<CurveClass> effective_classes_below(const CurveClass& beta) {
    const auto& m = *beta.model;
    long cap = form_dot(m.positive_form, beta.coords);
    std::set<std::vector<long>> seen;
    std::function<void(std::vector<long>, size_t)> dfs = [&](std::vector<long> cur, size_t gi) {
        if (gi == m.cone_generators.size()) {
            seen.insert(cur);
            return;
        }
        const auto& g = m.cone_generators[gi];
        long gp = form_dot(m.positive_form, g);
        for (long k = 0; form_dot(m.positive_form, cur) + k * gp <= cap; ++k) {
            std::vector<long> next = cur;
            for (size_t i = 0; i < next.size(); ++i) next[i] += k * g[i];
            dfs(next, gi + 1);
            if (gp == 0) break;
        }
    };
    dfs(std::vector<long>((size_t)m.rank, 0), 0);
    std::vector<CurveClass> out;
    for (const auto& c : seen) {
        CurveClass x = CurveClass::make(beta.model, c);
        CurveClass rest = beta - x;
        if (rest.is_zero() || effective(rest)) out.push_back(x);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Keys

std::string Insertion::str() const {
    return "tau" + std::to_string(k) + "(" + cls + ")";
}

std::vector<Insertion> sort_insertions(std::vector<Insertion> omega) {
    std::sort(omega.begin(), omega.end(), [](const Insertion& a, const Insertion& b) {
        if (a.k != b.k) return a.k < b.k;
        return a.cls < b.cls;
    });
    return omega;
}

std::string species_name(Species s) {
    switch (s) {
        case Species::TypeI_D0: return "TypeI0";
        case Species::TypeI_Dinf: return "TypeIinf";
        case Species::TypeII: return "TypeII";
        case Species::Rubber: return "Rubber";
        case Species::Absolute: return "Abs";
        case Species::RelativePair: return "Pair";
    }
    throw std::runtime_error("bad species");
}

std::string InvariantKey::str() const {
    std::ostringstream os;
    os << species_name(species) << "[g=" << g << ",beta=" << beta.str();
    if (mu) os << ",mu=" << mu->str();
    if (distinguished) os << ",dist=" << distinguished->str();
    os << ",omega=[";
    for (size_t i = 0; i < omega.size(); ++i) {
        if (i) os << ",";
        os << omega[i].str();
    }
    os << "]";
    if (nu) os << ",nu=" << nu->str();
    if (species == Species::Rubber) os << ",psi=" << psi_inf_power;
    if (!connected) os << ",disconnected";
    os << "]";
    return os.str();
}

bool InvariantKey::operator==(const InvariantKey& o) const {
    bool base = species == o.species && g == o.g && beta == o.beta && omega == o.omega &&
                distinguished == o.distinguished && psi_inf_power == o.psi_inf_power &&
                connected == o.connected;
    if (!base) return false;
    auto eq_part = [](const std::optional<WeightedPartition>& a,
                      const std::optional<WeightedPartition>& b) {
        if (a.has_value() != b.has_value()) return false;
        return !a || *a == *b;
    };
    return eq_part(mu, o.mu) && eq_part(nu, o.nu);
}

void InvariantKey::validate() const {
    auto need = [&](bool cond, const char* msg) {
        if (!cond) throw std::runtime_error(std::string("invalid key: ") + msg);
    };
    auto has_form = [&](const std::string& d) {
        return beta.model && beta.model->intersection_forms.count(d) > 0;
    };
    switch (species) {
        case Species::TypeI_D0:
            need(mu.has_value() && !nu.has_value(), "TypeI0 carries mu only");
            break;
        case Species::TypeI_Dinf:
            need(nu.has_value() && !mu.has_value(), "TypeIinf carries nu only");
            break;
        case Species::TypeII:
        case Species::Rubber:
            need(mu.has_value() && nu.has_value(), "two-divisor species carries mu and nu");
            break;
        case Species::Absolute:
            need(!mu && !nu && !distinguished, "absolute keys carry no relative data");
            break;
        case Species::RelativePair:
            need(nu.has_value() && !mu.has_value(), "pair keys carry nu only");
            break;
    }
    if (species != Species::Rubber)
        need(psi_inf_power == 0, "psi power outside rubber species");
    else
        need(psi_inf_power >= 0, "psi power must be nonnegative");
    if (mu && has_form("D0"))
        need(mu->size() == beta.intersect("D0"), "mu size must equal int_beta[D0]");
    if (nu && (species == Species::TypeII || species == Species::TypeI_Dinf ||
               species == Species::Rubber) &&
        has_form("Dinf"))
        need(nu->size() == beta.intersect("Dinf"), "nu size must equal int_beta[Dinf]");
    if (nu && species == Species::RelativePair && has_form("W"))
        need(nu->size() == beta.intersect("W"), "nu size must equal int_beta[W]");
}

// ---------------------------------------------------------------------------
// Orders

namespace {
int dist_delta_deg(const InvariantKey& k, const BasisPtr& ring) {
    if (!k.distinguished) throw std::runtime_error("missing distinguished insertion");
    // The distinguished class is [D0].delta; deg(delta) = deg(label) - 2.
    return ring->deg(ring->index(k.distinguished->cls)) - 2;
}
}  // namespace

OrderResult circ_less_typeII(const InvariantKey& a, const InvariantKey& b,
                             const BasisPtr& delta_ring) {
    if (a.species != Species::TypeII || b.species != Species::TypeII)
        throw std::runtime_error("circ_less_typeII: wrong species");
    if (!a.distinguished || !b.distinguished)
        throw std::runtime_error("circ_less_typeII: missing distinguished slot");
    // (1)
    if (a.beta != b.beta)
        return class_less(a.beta, b.beta) ? OrderResult::Lower : OrderResult::NotLower;
    // (2)
    if (a.g != b.g) return a.g < b.g ? OrderResult::Lower : OrderResult::NotLower;
    // (3)
    if (a.omega.size() != b.omega.size())
        return a.omega.size() < b.omega.size() ? OrderResult::Lower : OrderResult::NotLower;
    // (4)
    if (a.mu->deg() != b.mu->deg())
        return a.mu->deg() > b.mu->deg() ? OrderResult::Lower : OrderResult::NotLower;
    // (5)
    if (a.nu->deg() != b.nu->deg())
        return a.nu->deg() > b.nu->deg() ? OrderResult::Lower : OrderResult::NotLower;
    // (6)
    int da = dist_delta_deg(a, delta_ring), db = dist_delta_deg(b, delta_ring);
    if (da != db) return da > db ? OrderResult::Lower : OrderResult::NotLower;
    // (7)
    return lex_compare(*a.nu, *b.nu) == LexCmp::Greater ? OrderResult::Lower
                                                        : OrderResult::NotLower;
}

OrderResult circ_less_pair(const InvariantKey& a, const InvariantKey& b) {
    if (a.species != Species::RelativePair || b.species != Species::RelativePair)
        throw std::runtime_error("circ_less_pair: wrong species");
    if (a.beta != b.beta)
        return class_less(a.beta, b.beta) ? OrderResult::Lower : OrderResult::NotLower;
    if (a.g != b.g) return a.g < b.g ? OrderResult::Lower : OrderResult::NotLower;
    if (a.omega.size() != b.omega.size())
        return a.omega.size() < b.omega.size() ? OrderResult::Lower : OrderResult::NotLower;
    if (a.nu->deg() != b.nu->deg())
        return a.nu->deg() > b.nu->deg() ? OrderResult::Lower : OrderResult::NotLower;
    return lex_compare(*a.nu, *b.nu) == LexCmp::Greater ? OrderResult::Lower
                                                        : OrderResult::NotLower;
}

bool primary_less(const InvariantKey& a, const InvariantKey& b) {
    if (a.beta != b.beta) return class_less(a.beta, b.beta);
    return a.g < b.g;
}

// ---------------------------------------------------------------------------
// Enumeration

std::vector<WeightedPartition> enumerate_partitions(const BasisPtr& ring, long n) {
    std::vector<WeightedPartition> out;
    if (n < 0) return out;
    std::vector<WeightedPart> cur;
    // Parts appended in weakly decreasing (mult, weight) order; identical odd
    // repeats skipped.
    std::function<void(long, long, int)> rec = [&](long rem, long max_mult, int max_weight) {
        if (rem == 0) {
            out.push_back(WeightedPartition::make(ring, cur));
            return;
        }
        for (long m = std::min(rem, max_mult); m >= 1; --m) {
            int wstart = (m == max_mult) ? max_weight : (int)ring->size() - 1;
            for (int w = wstart; w >= 0; --w) {
                if (!cur.empty() && cur.back().mult == m && cur.back().weight == w &&
                    ring->odd(w))
                    continue;
                cur.push_back({m, w});
                rec(rem - m, m, w);
                cur.pop_back();
            }
        }
    };
    rec(n, n, (int)ring->size() - 1);
    return out;
}

namespace {
std::vector<std::vector<Insertion>> enumerate_omegas(const Bounds& b) {
    // All possible single insertions, in canonical order.
    std::vector<Insertion> atoms;
    for (int k = 0; k <= b.max_descendent; ++k)
        for (const auto& l : b.insertion_labels) atoms.push_back({k, l});
    atoms = sort_insertions(atoms);
    std::vector<std::vector<Insertion>> out;
    std::vector<Insertion> cur;
    std::function<void(size_t)> rec = [&](size_t start) {
        out.push_back(cur);
        if ((int)cur.size() >= b.max_omega) return;
        for (size_t i = start; i < atoms.size(); ++i) {
            cur.push_back(atoms[i]);
            rec(i);  // multisets: repetition allowed
            cur.pop_back();
        }
    };
    rec(0);
    return out;
}
}  // namespace

std::vector<InvariantKey> enumerate_keys(Species species, const CurveClass& beta_cap,
                                         const Bounds& bounds) {
    std::vector<InvariantKey> out;
    const BasisPtr part_ring = bounds.divisor_ring ? bounds.divisor_ring : bounds.ring;
    auto omegas = enumerate_omegas(bounds);
    std::vector<std::string> dist_labels;
    if (species == Species::TypeII) {
        // Distinguished classes [D0].delta with deg(delta) > 0: bundle labels
        // of the form "x*[D0]" in degree > 2.
        for (size_t i = 0; i < bounds.ring->size(); ++i) {
            const auto& l = bounds.ring->labels[i];
            if (l.size() >= 4 && l.substr(l.size() - 4) == "[D0]" && bounds.ring->deg((int)i) > 2)
                if (l != "[D0]") dist_labels.push_back(l);
        }
    }
    for (const auto& beta : effective_classes_below(beta_cap)) {
        long n0 = 0, ninf = 0;
        bool left = species == Species::TypeI_D0 || species == Species::TypeII ||
                    species == Species::Rubber;
        bool right = species == Species::TypeI_Dinf || species == Species::TypeII ||
                     species == Species::Rubber || species == Species::RelativePair;
        const std::string right_div =
            species == Species::RelativePair ? bounds.right_divisor : "Dinf";
        if (left) {
            n0 = beta.intersect(bounds.left_divisor);
            if (n0 < 0) continue;
        }
        if (right) {
            ninf = beta.intersect(right_div);
            if (ninf < 0) continue;
        }
        auto mus = left ? enumerate_partitions(part_ring, n0)
                        : std::vector<WeightedPartition>{};
        auto nus = right ? enumerate_partitions(part_ring, ninf)
                         : std::vector<WeightedPartition>{};
        for (int g = 0; g <= bounds.max_genus; ++g) {
            for (const auto& om : omegas) {
                auto emit = [&](std::optional<WeightedPartition> mu,
                                std::optional<WeightedPartition> nu,
                                std::optional<Insertion> dist) {
                    InvariantKey k;
                    k.species = species;
                    k.g = g;
                    k.beta = beta;
                    k.omega = om;
                    k.mu = std::move(mu);
                    k.nu = std::move(nu);
                    k.distinguished = std::move(dist);
                    out.push_back(std::move(k));
                };
                auto loop_nu = [&](std::optional<WeightedPartition> mu) {
                    if (!right) {
                        if (species == Species::TypeII) return;  // unreachable
                        emit(std::move(mu), std::nullopt, std::nullopt);
                        return;
                    }
                    for (const auto& nu : nus) {
                        if (species == Species::TypeII) {
                            for (const auto& d : dist_labels)
                                emit(mu, nu, Insertion{0, d});
                        } else {
                            emit(mu, nu, std::nullopt);
                        }
                    }
                };
                if (left) {
                    for (const auto& mu : mus) loop_nu(mu);
                } else {
                    loop_nu(std::nullopt);
                }
            }
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<InvariantKey> downset(const InvariantKey& key, const Bounds& bounds) {
    auto all = enumerate_keys(key.species, key.beta, bounds);
    std::vector<InvariantKey> out;
    for (const auto& k : all) {
        OrderResult r = key.species == Species::RelativePair
                            ? circ_less_pair(k, key)
                            : circ_less_typeII(k, key, bounds.ring);
        if (r == OrderResult::Lower) out.push_back(k);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Key parsing

namespace {
struct KCursor {
    const std::string& s;
    size_t i = 0;
    bool eof() const { return i >= s.size(); }
    char peek() const {
        if (i >= s.size()) throw std::invalid_argument("unexpected end of key text");
        return s[i];
    }
    void expect(char c) {
        if (peek() != c)
            throw std::invalid_argument(std::string("expected '") + c + "' in key text");
        ++i;
    }
    std::string until_any(const std::string& stops) {
        size_t start = i;
        while (i < s.size() && stops.find(s[i]) == std::string::npos) ++i;
        return s.substr(start, i - start);
    }
    // Consumes a balanced chunk opened by the current character.
    std::string balanced(char open, char close) {
        expect(open);
        size_t depth = 1, start = i;
        while (i < s.size() && depth) {
            if (s[i] == open) ++depth;
            if (s[i] == close) --depth;
            ++i;
        }
        if (depth) throw std::invalid_argument("unbalanced brackets in key text");
        return s.substr(start, i - start - 1);
    }
};

Insertion parse_insertion(const std::string& text) {
    if (text.substr(0, 3) != "tau") throw std::invalid_argument("bad insertion: " + text);
    size_t p = text.find('(');
    if (p == std::string::npos || text.back() != ')')
        throw std::invalid_argument("bad insertion: " + text);
    Insertion ins;
    ins.k = std::stoi(text.substr(3, p - 3));
    ins.cls = text.substr(p + 1, text.size() - p - 2);
    return ins;
}

std::vector<Insertion> parse_omega(const std::string& text) {
    std::vector<Insertion> out;
    size_t i = 0, depth = 0, start = 0;
    if (text.empty()) return out;
    for (; i <= text.size(); ++i) {
        if (i == text.size() || (text[i] == ',' && depth == 0)) {
            out.push_back(parse_insertion(text.substr(start, i - start)));
            start = i + 1;
        } else if (text[i] == '(') {
            ++depth;
        } else if (text[i] == ')') {
            --depth;
        }
    }
    return sort_insertions(out);
}
}  // namespace

InvariantKey parse_key(const ModelPtr& model, const BasisPtr& ring, const std::string& text) {
    return parse_key(model, ring, ring, text);
}

InvariantKey parse_key(const ModelPtr& model, const BasisPtr& ring,
                       const BasisPtr& divisor_ring, const std::string& text) {
    KCursor c{text};
    std::string name = c.until_any("[");
    InvariantKey k;
    if (name == "TypeI0")
        k.species = Species::TypeI_D0;
    else if (name == "TypeIinf")
        k.species = Species::TypeI_Dinf;
    else if (name == "TypeII")
        k.species = Species::TypeII;
    else if (name == "Rubber")
        k.species = Species::Rubber;
    else if (name == "Abs")
        k.species = Species::Absolute;
    else if (name == "Pair")
        k.species = Species::RelativePair;
    else
        throw std::invalid_argument("unknown species name: " + name);
    k.beta = CurveClass::zero(model);
    std::string body = c.balanced('[', ']');
    if (!c.eof()) throw std::invalid_argument("trailing text after key");
    // Split body on top-level commas.
    std::vector<std::string> fields;
    {
        int depth = 0;
        size_t start = 0;
        for (size_t i = 0; i <= body.size(); ++i) {
            if (i == body.size() || (body[i] == ',' && depth == 0)) {
                if (i > start) fields.push_back(body.substr(start, i - start));
                start = i + 1;
            } else if (body[i] == '(' || body[i] == '[' || body[i] == '{') {
                ++depth;
            } else if (body[i] == ')' || body[i] == ']' || body[i] == '}') {
                --depth;
            }
        }
    }
    for (const auto& f : fields) {
        if (f == "disconnected") {
            k.connected = false;
            continue;
        }
        size_t eq = f.find('=');
        if (eq == std::string::npos) throw std::invalid_argument("bad key field: " + f);
        std::string fname = f.substr(0, eq), val = f.substr(eq + 1);
        if (fname == "g") {
            k.g = std::stoi(val);
        } else if (fname == "beta") {
            if (val.size() < 2 || val.front() != '(' || val.back() != ')')
                throw std::invalid_argument("bad beta: " + val);
            std::vector<long> coords;
            std::stringstream ss(val.substr(1, val.size() - 2));
            std::string tok;
            while (std::getline(ss, tok, ',')) coords.push_back(std::stol(tok));
            k.beta = CurveClass::make(model, std::move(coords));
        } else if (fname == "mu") {
            k.mu = parse_partition(divisor_ring, val);
        } else if (fname == "nu") {
            k.nu = parse_partition(divisor_ring, val);
        } else if (fname == "dist") {
            k.distinguished = parse_insertion(val);
        } else if (fname == "omega") {
            if (val.size() < 2 || val.front() != '[' || val.back() != ']')
                throw std::invalid_argument("bad omega: " + val);
            k.omega = parse_omega(val.substr(1, val.size() - 2));
        } else if (fname == "psi") {
            k.psi_inf_power = std::stoi(val);
        } else {
            throw std::invalid_argument("unknown key field: " + fname);
        }
    }
    return k;
}

}  // namespace relgw
