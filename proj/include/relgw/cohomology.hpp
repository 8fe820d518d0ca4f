#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "relgw/rational.hpp"

namespace relgw {

// A finite graded cohomology basis with Poincare pairing and cup structure
// constants.  Odd classes are supported: the pairing block in odd degrees is
// antisymmetric and cup products obey the Koszul sign rule.
struct GradedBasis {
    std::string name;
    std::vector<std::string> labels;
    std::vector<int> degrees;  // real grading
    int dim_real = 0;
    std::vector<std::vector<Rat>> pairing;
    // cup[{i,j}] = expansion of labels[i] * labels[j]; only i<=j stored,
    // the other order is recovered through the Koszul sign.
    std::map<std::pair<int, int>, std::vector<std::pair<int, Rat>>> cup;
    int identity = 0;

    int index(const std::string& label) const;
    int deg(int i) const { return degrees.at(static_cast<size_t>(i)); }
    size_t size() const { return labels.size(); }
    bool odd(int i) const { return deg(i) % 2 != 0; }

    // Checks every structural invariant (grading blocks, nondegeneracy,
    // identity behavior, Koszul symmetry).  Throws std::runtime_error.
    void validate() const;
};

using BasisPtr = std::shared_ptr<const GradedBasis>;

struct CohClass {
    BasisPtr basis;
    std::vector<Rat> c;

    static CohClass zero(BasisPtr b);
    static CohClass unit(BasisPtr b, int i);
    static CohClass unit(BasisPtr b, const std::string& label);

    bool is_zero() const;
    // Defined exactly when all nonzero labels share one degree.
    std::optional<int> homogeneous_degree() const;
    Rat coeff(int i) const { return c.at(static_cast<size_t>(i)); }
    std::string str() const;
};

CohClass operator+(const CohClass& a, const CohClass& b);
CohClass operator-(const CohClass& a, const CohClass& b);
CohClass operator*(const Rat& s, const CohClass& a);
CohClass cup(const CohClass& a, const CohClass& b);
Rat pair_classes(const CohClass& a, const CohClass& b);
// Integral over the space: pairing with the identity.
Rat integrate(const CohClass& a);

// dual(i): the unique class with pairing(labels[i], dual) = 1 and all other
// basis pairings zero.
CohClass poincare_dual_label(const BasisPtr& b, int i);

struct SignedLabel {
    int index;
    int sign;  // +1 or -1
};
// dual(i) when it is +-(a single label); nullopt otherwise.
std::optional<SignedLabel> dual_signed_label(const BasisPtr& b, int i);

// iota: W -> V.  matrix[w][v] = coefficient of W-label w in iota^*(V-label v).
struct RestrictionData {
    BasisPtr source;  // V
    BasisPtr target;  // W
    std::vector<std::vector<Rat>> matrix;

    CohClass restrict(const CohClass& on_v) const;
    // iota_*: derived from iota^* and both pairings via the adjunction
    // pairing_V(iota_* a, b) = pairing_W(a, iota^* b).
    CohClass pushforward(const CohClass& on_w) const;
    void validate() const;
};

// Y = P(L + O_X).  True basis of H^*(Y): { delta_i, delta_i.[D0] } following
// the bundle presentation; the 3 m_X gamma labels are all resolvable.
struct BundleGeometry {
    BasisPtr base;  // X
    CohClass c1L;   // degree-2 class on X
    BasisPtr bundle;

    // gamma_i for i in [0, 3m): delta_i, delta_i.[D0], delta_i.[Dinf].
    CohClass gamma(int i) const;
    std::vector<std::string> gamma_labels() const;

    CohClass d0() const;
    CohClass dinf() const;
    CohClass lift(const CohClass& on_x) const;       // pi^*
    CohClass times_d0(const CohClass& on_x) const;   // pi^*(a).[D0]
    CohClass times_dinf(const CohClass& on_x) const; // pi^*(a).[Dinf]
};

BundleGeometry build_bundle_basis(const BasisPtr& base, const CohClass& c1L);

// Ring catalog.
BasisPtr ring_point();
BasisPtr ring_projective(int n);
// Genus-g curve: Id, a1..ag (deg 1), b1..bg (deg 1), pt (deg 2);
// pairing(a_i, b_i) = +1 (ordered dual pairs), cup a_i b_i = pt.
BasisPtr ring_curve(int g);
// Lattice-free K3-style surface model: Id, H with H.H = h_self, pt, plus
// formal odd slot pairs (oddk, oddk') in degrees (1,3) pairing to +1.
BasisPtr ring_k3_model(int h_self, int odd_pairs);

// Ring-description files (JSON): {name, labels, degrees, dim_real,
// pairing (row-major "p/q" strings), cup (sparse [i,j,k,"c"]), identity}.
BasisPtr ring_from_json_text(const std::string& text);
std::string ring_to_json_text(const GradedBasis& b);
RestrictionData restriction_from_json_text(const std::string& text,
                                           const BasisPtr& source,
                                           const BasisPtr& target);

}  // namespace relgw
