#pragma once

#include <string>
#include <vector>

namespace relgw {

// Canonical descriptor for a theory appearing in a determination scheme.
// Degree-1 hypersurfaces canonicalize to the smaller projective space.
struct TheoryNode {
    std::string desc;

    static TheoryNode projective(int r);                       // P3
    static TheoryNode hypersurface(int d, int r);              // T4, S3, C2, ...
    static TheoryNode starred(const TheoryNode& x);            // T4*
    static TheoryNode pair(const TheoryNode& x, const TheoryNode& w);  // (T4,S4)
    static TheoryNode blowup(int r, int d1, int d2);           // P3[4,5]
    static TheoryNode bidegree_locus(int d1, int d2, int r);   // C{4,5}, P0
};

struct SchemeEdge {
    std::string from;
    std::string rule;  // "3", "2", or "l"
    std::vector<std::string> to;
};

// Determination scheme: an arrow means the source theory is determined by the
// target theories.  Endpoints are nodes with no outgoing arrow.
struct SchemeDAG {
    std::vector<std::string> nodes;  // insertion order, deduplicated
    std::vector<SchemeEdge> edges;

    void add_edge(const std::string& from, const std::string& rule,
                  const std::vector<std::string>& to);
    std::vector<std::string> endpoints() const;           // sorted
    void validate_acyclic() const;                        // throws on a cycle
    std::string str() const;                              // byte-stable listing
    std::string dot() const;                              // byte-stable DOT
};

// Star-stripped, deduplicated, sorted endpoint set.
std::vector<std::string> canonical_endpoints(const SchemeDAG& dag);

// One degeneration step for the degree-d hypersurface X in P^r (d >= 2):
//   X*         -3-> (X1,I)*, (B,I)
//   (X1,I)*    -2-> X1*, I
//   (B,I)      -2-> B, I
//   B          -l-> P^{r-1}, I, S
// with X1 of degree d-1 in P^r, I of degree d-1 in P^{r-1}, S the bidegree
// (d,d-1) locus in P^{r-1}, and B the blow-up of P^{r-1} along S.
void hypersurface_step(SchemeDAG& dag, int d, int r);

// Full scheme of one step starting from the starred theory.
SchemeDAG hypersurface_scheme(int d, int r);

// Dependency chain for the blow-up of v along the complete intersection z of
// the given divisors: v, w1, w1^w2, ..., z  (n+1 nodes for n divisors).
std::vector<std::string> blowup_dependencies(const std::string& v,
                                             const std::vector<std::string>& divisors,
                                             const std::string& z);

// The full quintic 3-fold scheme (16 arrows, endpoints
// P3, P2, S2, S3, S4, C{1,2}, C{2,3}, C{3,4}, C{4,5}).
SchemeDAG quintic_scheme();

}  // namespace relgw
