#include "relgw/cohomology.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace relgw {

namespace {

int koszul_sign(int da, int db) { return (da % 2 != 0 && db % 2 != 0) ? -1 : 1; }

// Exact Gaussian elimination; returns the inverse of m.
std::vector<std::vector<Rat>> invert(std::vector<std::vector<Rat>> m) {
    const size_t n = m.size();
    std::vector<std::vector<Rat>> inv(n, std::vector<Rat>(n, 0));
    for (size_t i = 0; i < n; ++i) inv[i][i] = 1;
    for (size_t col = 0; col < n; ++col) {
        size_t piv = col;
        while (piv < n && m[piv][col] == 0) ++piv;
        if (piv == n) throw std::runtime_error("degenerate pairing matrix");
        std::swap(m[piv], m[col]);
        std::swap(inv[piv], inv[col]);
        Rat p = m[col][col];
        for (size_t j = 0; j < n; ++j) {
            m[col][j] /= p;
            inv[col][j] /= p;
        }
        for (size_t r = 0; r < n; ++r) {
            if (r == col || m[r][col] == 0) continue;
            Rat f = m[r][col];
            for (size_t j = 0; j < n; ++j) {
                m[r][j] -= f * m[col][j];
                inv[r][j] -= f * inv[col][j];
            }
        }
    }
    return inv;
}

}  // namespace

int GradedBasis::index(const std::string& label) const {
    for (size_t i = 0; i < labels.size(); ++i)
        if (labels[i] == label) return static_cast<int>(i);
    throw std::runtime_error("unknown label '" + label + "' in ring " + name);
}

void GradedBasis::validate() const {
    const size_t n = labels.size();
    if (degrees.size() != n || pairing.size() != n)
        throw std::runtime_error("basis size mismatch");
    if (deg(identity) != 0)
        throw std::runtime_error("identity must have degree 0");
    for (size_t i = 0; i < n; ++i) {
        if (pairing[i].size() != n) throw std::runtime_error("pairing not square");
        for (size_t j = 0; j < n; ++j) {
            if (pairing[i][j] != 0 && deg((int)i) + deg((int)j) != dim_real)
                throw std::runtime_error("pairing violates grading block structure");
            // graded symmetry
            Rat sym = Rat(koszul_sign(deg((int)i), deg((int)j))) * pairing[j][i];
            if (pairing[i][j] != sym)
                throw std::runtime_error("pairing not graded-symmetric");
        }
    }
    invert(pairing);  // throws when degenerate
    for (const auto& [key, terms] : cup) {
        auto [i, j] = key;
        if (i > j) throw std::runtime_error("cup stores only i<=j");
        for (const auto& [k, coef] : terms)
            if (coef != 0 && deg(i) + deg(j) != deg(k))
                throw std::runtime_error("cup constants violate grading");
    }
    // identity acts as identity
    auto b = std::make_shared<GradedBasis>(*this);
    for (size_t i = 0; i < n; ++i) {
        CohClass e = CohClass::unit(b, (int)i);
        CohClass p = relgw::cup(CohClass::unit(b, identity), e);
        for (size_t j = 0; j < n; ++j)
            if (p.c[j] != e.c[j]) throw std::runtime_error("identity does not cup-act as identity");
    }
}

CohClass CohClass::zero(BasisPtr b) {
    CohClass r;
    r.basis = std::move(b);
    r.c.assign(r.basis->size(), 0);
    return r;
}

CohClass CohClass::unit(BasisPtr b, int i) {
    CohClass r = zero(std::move(b));
    r.c.at(static_cast<size_t>(i)) = 1;
    return r;
}

CohClass CohClass::unit(BasisPtr b, const std::string& label) {
    int i = b->index(label);
    return unit(std::move(b), i);
}

bool CohClass::is_zero() const {
    for (const auto& x : c)
        if (x != 0) return false;
    return true;
}

std::optional<int> CohClass::homogeneous_degree() const {
    std::optional<int> d;
    for (size_t i = 0; i < c.size(); ++i) {
        if (c[i] == 0) continue;
        int di = basis->deg((int)i);
        if (d && *d != di) return std::nullopt;
        d = di;
    }
    if (!d) return 0;  // the zero class counts as degree 0
    return d;
}

std::string CohClass::str() const {
    std::ostringstream os;
    bool first = true;
    for (size_t i = 0; i < c.size(); ++i) {
        if (c[i] == 0) continue;
        if (!first) os << " + ";
        os << rat_str(c[i]) << "*" << basis->labels[i];
        first = false;
    }
    if (first) os << "0";
    return os.str();
}

static void check_same(const CohClass& a, const CohClass& b) {
    if (a.basis != b.basis) throw std::runtime_error("class arithmetic across rings");
}

CohClass operator+(const CohClass& a, const CohClass& b) {
    check_same(a, b);
    CohClass r = a;
    for (size_t i = 0; i < r.c.size(); ++i) r.c[i] += b.c[i];
    return r;
}

CohClass operator-(const CohClass& a, const CohClass& b) {
    check_same(a, b);
    CohClass r = a;
    for (size_t i = 0; i < r.c.size(); ++i) r.c[i] -= b.c[i];
    return r;
}

CohClass operator*(const Rat& s, const CohClass& a) {
    CohClass r = a;
    for (auto& x : r.c) x *= s;
    return r;
}

CohClass cup(const CohClass& a, const CohClass& b) {
    check_same(a, b);
    CohClass r = CohClass::zero(a.basis);
    const auto& bs = *a.basis;
    for (size_t i = 0; i < a.c.size(); ++i) {
        if (a.c[i] == 0) continue;
        for (size_t j = 0; j < b.c.size(); ++j) {
            if (b.c[j] == 0) continue;
            size_t lo = std::min(i, j), hi = std::max(i, j);
            auto it = bs.cup.find({(int)lo, (int)hi});
            if (it == bs.cup.end()) continue;
            int sign = (i > j) ? koszul_sign(bs.deg((int)i), bs.deg((int)j)) : 1;
            Rat f = a.c[i] * b.c[j] * sign;
            for (const auto& [k, coef] : it->second)
                r.c[(size_t)k] += f * coef;
        }
    }
    return r;
}

Rat pair_classes(const CohClass& a, const CohClass& b) {
    check_same(a, b);
    Rat s = 0;
    for (size_t i = 0; i < a.c.size(); ++i) {
        if (a.c[i] == 0) continue;
        for (size_t j = 0; j < b.c.size(); ++j)
            if (b.c[j] != 0) s += a.c[i] * b.c[j] * a.basis->pairing[i][j];
    }
    return s;
}

Rat integrate(const CohClass& a) {
    return pair_classes(a, CohClass::unit(a.basis, a.basis->identity));
}

CohClass poincare_dual_label(const BasisPtr& b, int i) {
    // Solve pairing(e_i, x) = 1, pairing(e_j, x) = 0 for j != i.
    auto inv = invert(b->pairing);
    CohClass r = CohClass::zero(b);
    for (size_t k = 0; k < b->size(); ++k) r.c[k] = inv[k][(size_t)i];
    // inv is (P^{-1})^T applied appropriately: verify and fix orientation.
    // pairing(e_i, x) = sum_k P[i][k] x_k; so x = column i of P^{-1}.
    return r;
}

std::optional<SignedLabel> dual_signed_label(const BasisPtr& b, int i) {
    CohClass d = poincare_dual_label(b, i);
    std::optional<SignedLabel> out;
    for (size_t k = 0; k < d.c.size(); ++k) {
        if (d.c[k] == 0) continue;
        if (out) return std::nullopt;  // more than one label
        if (d.c[k] == 1)
            out = SignedLabel{(int)k, +1};
        else if (d.c[k] == -1)
            out = SignedLabel{(int)k, -1};
        else
            return std::nullopt;
    }
    return out;
}

CohClass RestrictionData::restrict(const CohClass& on_v) const {
    if (on_v.basis != source) throw std::runtime_error("restrict: class not on source ring");
    CohClass r = CohClass::zero(target);
    for (size_t v = 0; v < source->size(); ++v) {
        if (on_v.c[v] == 0) continue;
        for (size_t w = 0; w < target->size(); ++w)
            r.c[w] += on_v.c[v] * matrix[w][v];
    }
    return r;
}

CohClass RestrictionData::pushforward(const CohClass& on_w) const {
    if (on_w.basis != target) throw std::runtime_error("pushforward: class not on target ring");
    // pairing_V(iota_* a, gamma_j) = pairing_W(a, iota^* gamma_j) for all j;
    // solve the resulting linear system exactly.
    const size_t n = source->size();
    std::vector<Rat> rhs(n, 0);
    for (size_t j = 0; j < n; ++j)
        rhs[j] = pair_classes(on_w, restrict(CohClass::unit(source, (int)j)));
    auto inv = invert(source->pairing);
    // pairing_V(x, e_j) = sum_i x_i P[i][j]  =>  x = P^{-T} rhs.
    CohClass r = CohClass::zero(source);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) r.c[i] += inv[j][i] * rhs[j];
    return r;
}

void RestrictionData::validate() const {
    for (size_t v = 0; v < source->size(); ++v) {
        CohClass img = restrict(CohClass::unit(source, (int)v));
        auto d = img.homogeneous_degree();
        if (!img.is_zero() && (!d || *d != source->deg((int)v)))
            throw std::runtime_error("restriction map is not degree-preserving");
    }
    // adjunction identity on all basis pairs
    for (size_t w = 0; w < target->size(); ++w) {
        CohClass pf = pushforward(CohClass::unit(target, (int)w));
        for (size_t v = 0; v < source->size(); ++v) {
            Rat lhs = pair_classes(pf, CohClass::unit(source, (int)v));
            Rat rhs = pair_classes(CohClass::unit(target, (int)w),
                                   restrict(CohClass::unit(source, (int)v)));
            if (lhs != rhs) throw std::runtime_error("pushforward adjunction failed");
        }
    }
}

// ---------------------------------------------------------------------------
// Bundle basis

CohClass BundleGeometry::d0() const {
    // [D0] = (Id.[D0]) in the bundle basis.
    return CohClass::unit(bundle, bundle->index("[D0]"));
}

CohClass BundleGeometry::dinf() const {
    // [Dinf] = [D0] + c1(L) as bundle classes.
    CohClass r = d0();
    return r + lift(c1L);
}

CohClass BundleGeometry::lift(const CohClass& on_x) const {
    if (on_x.basis != base) throw std::runtime_error("lift: class not on base ring");
    CohClass r = CohClass::zero(bundle);
    for (size_t i = 0; i < base->size(); ++i) r.c[i] = on_x.c[i];
    return r;
}

CohClass BundleGeometry::times_d0(const CohClass& on_x) const {
    return cup(lift(on_x), d0());
}

CohClass BundleGeometry::times_dinf(const CohClass& on_x) const {
    return cup(lift(on_x), dinf());
}

CohClass BundleGeometry::gamma(int i) const {
    const int m = static_cast<int>(base->size());
    if (i < 0 || i >= 3 * m) throw std::runtime_error("gamma index out of range");
    CohClass d = CohClass::unit(base, i % m);
    if (i < m) return lift(d);
    if (i < 2 * m) return times_d0(d);
    return times_dinf(d);
}

std::vector<std::string> BundleGeometry::gamma_labels() const {
    std::vector<std::string> out;
    for (const auto& l : base->labels) out.push_back(l);
    for (const auto& l : base->labels) out.push_back(l + "*[D0]");
    for (const auto& l : base->labels) out.push_back(l + "*[Dinf]");
    return out;
}

BundleGeometry build_bundle_basis(const BasisPtr& base, const CohClass& c1L) {
    if (c1L.basis != base) throw std::runtime_error("c1L must live on the base ring");
    if (!c1L.is_zero()) {
        auto d = c1L.homogeneous_degree();
        if (!d || *d != 2) throw std::runtime_error("c1L must be homogeneous of degree 2");
    }
    invert(base->pairing);  // degenerate base pairing -> throws

    const int m = static_cast<int>(base->size());
    auto y = std::make_shared<GradedBasis>();
    y->name = base->name + "-bundle";
    y->dim_real = base->dim_real + 2;
    // Labels: delta_i, then delta_i*[D0]; the [D0]-product of the identity is
    // printed "[D0]" itself.
    for (int i = 0; i < m; ++i) {
        y->labels.push_back(base->labels[(size_t)i]);
        y->degrees.push_back(base->deg(i));
    }
    for (int i = 0; i < m; ++i) {
        y->labels.push_back(i == base->identity ? std::string("[D0]")
                                                : base->labels[(size_t)i] + "*[D0]");
        y->degrees.push_back(base->deg(i) + 2);
    }
    y->identity = base->identity;

    // Base cup expansion helper.
    auto base_cup = [&](int i, int j) {
        return cup(CohClass::unit(base, i), CohClass::unit(base, j));
    };

    // Cup structure: pull-backs multiply as on X; [D0]^2 = -c1L.[D0]
    // (from [D0].[Dinf] = 0 and [Dinf] = [D0] + c1L).
    auto put = [&](int i, int j, const std::vector<std::pair<int, Rat>>& terms) {
        if (i <= j)
            y->cup[{i, j}] = terms;
        else {
            int s = (y->deg(i) % 2 != 0 && y->deg(j) % 2 != 0) ? -1 : 1;
            std::vector<std::pair<int, Rat>> flip = terms;
            for (auto& [k, c] : flip) c *= s;
            y->cup[{j, i}] = flip;
        }
    };
    for (int i = 0; i < m; ++i) {
        for (int j = i; j < m; ++j) {
            CohClass p = base_cup(i, j);
            std::vector<std::pair<int, Rat>> lift_terms, d0_terms;
            for (int k = 0; k < m; ++k)
                if (p.c[(size_t)k] != 0) {
                    lift_terms.push_back({k, p.c[(size_t)k]});
                    d0_terms.push_back({k + m, p.c[(size_t)k]});
                }
            if (!lift_terms.empty()) put(i, j, lift_terms);
            // delta_i . (delta_j [D0]) = (delta_i delta_j).[D0]
            if (!d0_terms.empty()) put(i, j + m, d0_terms);
            if (i != j && !d0_terms.empty()) {
                // (delta_i [D0]) . delta_j: same product, Koszul handled by put
                std::vector<std::pair<int, Rat>> t = d0_terms;
                int s = (base->deg(i) % 2 != 0 && base->deg(j) % 2 != 0) ? -1 : 1;
                for (auto& [k, c] : t) c *= s;
                put(i + m, j, t);
            } else if (i == j && !d0_terms.empty()) {
                // handled by the (i, j+m) entry above
            }
        }
    }
    // (delta_i [D0]).(delta_j [D0]) = -(delta_i delta_j c1L).[D0]
    for (int i = 0; i < m; ++i) {
        for (int j = i; j < m; ++j) {
            CohClass p = cup(base_cup(i, j), c1L);
            std::vector<std::pair<int, Rat>> terms;
            for (int k = 0; k < m; ++k)
                if (p.c[(size_t)k] != 0) terms.push_back({k + m, -p.c[(size_t)k]});
            if (!terms.empty()) put(i + m, j + m, terms);
        }
    }

    // Pairing over Y: <a, b.[D0]> = int_X a.b  (section class);
    // <a.[D0], b.[D0]> = -int_X a.b.c1L;  <a, b> = 0.
    y->pairing.assign((size_t)(2 * m), std::vector<Rat>((size_t)(2 * m), 0));
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < m; ++j) {
            Rat ab = integrate(base_cup(i, j));
            y->pairing[(size_t)i][(size_t)(j + m)] = ab;
            int s = (base->deg(i) % 2 != 0 && (base->deg(j) + 2) % 2 != 0) ? -1 : 1;
            y->pairing[(size_t)(j + m)][(size_t)i] = Rat(s) * ab;
            Rat abl = integrate(cup(base_cup(i, j), c1L));
            y->pairing[(size_t)(i + m)][(size_t)(j + m)] = -abl;
        }
    }
    y->validate();

    BundleGeometry geo;
    geo.base = base;
    geo.c1L = c1L;
    geo.bundle = y;
    return geo;
}

// ---------------------------------------------------------------------------
// Catalog

BasisPtr ring_point() {
    auto b = std::make_shared<GradedBasis>();
    b->name = "point";
    b->labels = {"Id"};
    b->degrees = {0};
    b->dim_real = 0;
    b->pairing = {{Rat(1)}};
    b->cup[{0, 0}] = {{0, Rat(1)}};
    b->identity = 0;
    b->validate();
    return b;
}

BasisPtr ring_projective(int n) {
    if (n < 0) throw std::runtime_error("projective space dimension must be >= 0");
    auto b = std::make_shared<GradedBasis>();
    b->name = "P" + std::to_string(n);
    b->dim_real = 2 * n;
    for (int i = 0; i <= n; ++i) {
        b->labels.push_back(i == 0 ? "Id" : (i == 1 ? "h" : "h^" + std::to_string(i)));
        b->degrees.push_back(2 * i);
    }
    b->pairing.assign((size_t)(n + 1), std::vector<Rat>((size_t)(n + 1), 0));
    for (int i = 0; i <= n; ++i) b->pairing[(size_t)i][(size_t)(n - i)] = 1;
    for (int i = 0; i <= n; ++i)
        for (int j = i; j <= n; ++j)
            if (i + j <= n) b->cup[{i, j}] = {{i + j, Rat(1)}};
    b->identity = 0;
    b->validate();
    return b;
}

BasisPtr ring_curve(int g) {
    if (g < 0) throw std::runtime_error("genus must be >= 0");
    auto b = std::make_shared<GradedBasis>();
    b->name = "curve" + std::to_string(g);
    b->dim_real = 2;
    b->labels.push_back("Id");
    b->degrees.push_back(0);
    for (int i = 1; i <= g; ++i) {
        b->labels.push_back("a" + std::to_string(i));
        b->degrees.push_back(1);
    }
    for (int i = 1; i <= g; ++i) {
        b->labels.push_back("b" + std::to_string(i));
        b->degrees.push_back(1);
    }
    b->labels.push_back("pt");
    b->degrees.push_back(2);
    const int n = 2 * g + 2;
    const int PT = n - 1;
    b->pairing.assign((size_t)n, std::vector<Rat>((size_t)n, 0));
    b->pairing[0][(size_t)PT] = 1;
    b->pairing[(size_t)PT][0] = 1;
    for (int i = 1; i <= g; ++i) {
        // ordered dual pairs (a_i, b_i) with pairing(a_i, b_i) = +1
        b->pairing[(size_t)i][(size_t)(g + i)] = 1;
        b->pairing[(size_t)(g + i)][(size_t)i] = -1;
    }
    b->identity = 0;
    for (int i = 0; i < n; ++i) b->cup[{0, i}] = {{i, Rat(1)}};
    for (int i = 1; i <= g; ++i) b->cup[{i, g + i}] = {{PT, Rat(1)}};  // a_i b_i = pt
    b->validate();
    return b;
}

BasisPtr ring_k3_model(int h_self, int odd_pairs) {
    auto b = std::make_shared<GradedBasis>();
    b->name = "k3model";
    b->dim_real = 4;
    b->labels = {"Id", "H"};
    b->degrees = {0, 2};
    for (int i = 1; i <= odd_pairs; ++i) {
        b->labels.push_back("o" + std::to_string(i));
        b->degrees.push_back(1);
        b->labels.push_back("o" + std::to_string(i) + "'");
        b->degrees.push_back(3);
    }
    b->labels.push_back("pt");
    b->degrees.push_back(4);
    const int n = (int)b->labels.size();
    const int PT = n - 1;
    b->pairing.assign((size_t)n, std::vector<Rat>((size_t)n, 0));
    b->pairing[0][(size_t)PT] = 1;
    b->pairing[(size_t)PT][0] = 1;
    b->pairing[1][1] = h_self;
    for (int i = 0; i < odd_pairs; ++i) {
        int a = 2 + 2 * i, ad = 3 + 2 * i;
        b->pairing[(size_t)a][(size_t)ad] = 1;
        b->pairing[(size_t)ad][(size_t)a] = -1;
    }
    b->identity = 0;
    for (int i = 0; i < n; ++i) b->cup[{0, i}] = {{i, Rat(1)}};
    b->cup[{1, 1}] = {{PT, Rat(h_self)}};
    b->validate();
    return b;
}

// ---------------------------------------------------------------------------
// JSON ring files

BasisPtr ring_from_json_text(const std::string& text) {
    auto j = nlohmann::json::parse(text);
    auto b = std::make_shared<GradedBasis>();
    b->name = j.value("name", "ring");
    b->labels = j.at("labels").get<std::vector<std::string>>();
    b->degrees = j.at("degrees").get<std::vector<int>>();
    b->dim_real = j.at("dim_real").get<int>();
    const size_t n = b->labels.size();
    auto rows = j.at("pairing");
    if (rows.size() != n) throw std::runtime_error("pairing row count mismatch");
    for (const auto& row : rows) {
        std::vector<Rat> r;
        for (const auto& cell : row) r.push_back(parse_rat(cell.get<std::string>()));
        b->pairing.push_back(std::move(r));
    }
    for (const auto& entry : j.at("cup")) {
        int i = entry.at(0).get<int>(), jj = entry.at(1).get<int>(), k = entry.at(2).get<int>();
        Rat c = parse_rat(entry.at(3).get<std::string>());
        b->cup[{i, jj}].push_back({k, c});
    }
    b->identity = b->index(j.at("identity").get<std::string>());
    b->validate();
    return b;
}

std::string ring_to_json_text(const GradedBasis& b) {
    nlohmann::json j;
    j["name"] = b.name;
    j["labels"] = b.labels;
    j["degrees"] = b.degrees;
    j["dim_real"] = b.dim_real;
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& row : b.pairing) {
        nlohmann::json r = nlohmann::json::array();
        for (const auto& cell : row) r.push_back(rat_str(cell));
        rows.push_back(r);
    }
    j["pairing"] = rows;
    nlohmann::json cups = nlohmann::json::array();
    for (const auto& [key, terms] : b.cup)
        for (const auto& [k, c] : terms)
            cups.push_back({key.first, key.second, k, rat_str(c)});
    j["cup"] = cups;
    j["identity"] = b.labels[(size_t)b.identity];
    return j.dump(2);
}

RestrictionData restriction_from_json_text(const std::string& text, const BasisPtr& source,
                                           const BasisPtr& target) {
    auto j = nlohmann::json::parse(text);
    RestrictionData r;
    r.source = source;
    r.target = target;
    for (const auto& row : j.at("matrix")) {
        std::vector<Rat> rr;
        for (const auto& cell : row) rr.push_back(parse_rat(cell.get<std::string>()));
        r.matrix.push_back(std::move(rr));
    }
    r.validate();
    return r;
}

}  // namespace relgw
