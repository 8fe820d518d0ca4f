#include "relgw/schemes.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

namespace relgw {

TheoryNode TheoryNode::projective(int r) {
    if (r < 0) throw std::invalid_argument("negative projective dimension");
    return {"P" + std::to_string(r)};
}

TheoryNode TheoryNode::hypersurface(int d, int r) {
    if (d < 1 || r < 1) throw std::invalid_argument("bad hypersurface parameters");
    if (d == 1) return projective(r - 1);
    switch (r) {
        case 4: return {"T" + std::to_string(d)};
        case 3: return {"S" + std::to_string(d)};
        case 2: return {"C" + std::to_string(d)};
        default: return {"X{" + std::to_string(d) + ",P" + std::to_string(r) + "}"};
    }
}

TheoryNode TheoryNode::starred(const TheoryNode& x) { return {x.desc + "*"}; }

TheoryNode TheoryNode::pair(const TheoryNode& x, const TheoryNode& w) {
    return {"(" + x.desc + "," + w.desc + ")"};
}

TheoryNode TheoryNode::blowup(int r, int d1, int d2) {
    return {"P" + std::to_string(r) + "[" + std::to_string(d1) + "," + std::to_string(d2) +
            "]"};
}

TheoryNode TheoryNode::bidegree_locus(int d1, int d2, int r) {
    // complete intersection of degrees (d1, d2) in P^r
    if (r == 3) return {"C{" + std::to_string(d1) + "," + std::to_string(d2) + "}"};
    if (r == 2) return {"P0"};
    return {"Z{" + std::to_string(d1) + "," + std::to_string(d2) + ",P" + std::to_string(r) +
            "}"};
}

void SchemeDAG::add_edge(const std::string& from, const std::string& rule,
                         const std::vector<std::string>& to) {
    auto note = [&](const std::string& n) {
        if (std::find(nodes.begin(), nodes.end(), n) == nodes.end()) nodes.push_back(n);
    };
    note(from);
    for (const auto& n : to) note(n);
    edges.push_back({from, rule, to});
}

std::vector<std::string> SchemeDAG::endpoints() const {
    std::set<std::string> sources;
    for (const auto& e : edges) sources.insert(e.from);
    std::vector<std::string> out;
    for (const auto& n : nodes)
        if (!sources.count(n)) out.push_back(n);
    std::sort(out.begin(), out.end());
    return out;
}

void SchemeDAG::validate_acyclic() const {
    std::map<std::string, std::vector<std::string>> adj;
    for (const auto& e : edges)
        for (const auto& t : e.to) adj[e.from].push_back(t);
    std::map<std::string, int> state;  // 0 new, 1 active, 2 done
    std::function<void(const std::string&)> dfs = [&](const std::string& n) {
        state[n] = 1;
        for (const auto& t : adj[n]) {
            if (state[t] == 1)
                throw std::runtime_error("determination scheme has a cycle through " + t);
            if (state[t] == 0) dfs(t);
        }
        state[n] = 2;
    };
    for (const auto& n : nodes)
        if (state[n] == 0) dfs(n);
}

std::string SchemeDAG::str() const {
    std::ostringstream os;
    for (const auto& e : edges) {
        os << e.from << " -" << e.rule << "-> ";
        for (size_t i = 0; i < e.to.size(); ++i) {
            if (i) os << ", ";
            os << e.to[i];
        }
        os << "\n";
    }
    return os.str();
}

std::string SchemeDAG::dot() const {
    std::ostringstream os;
    os << "digraph scheme {\n";
    for (const auto& n : nodes) os << "  \"" << n << "\";\n";
    for (const auto& e : edges)
        for (const auto& t : e.to)
            os << "  \"" << e.from << "\" -> \"" << t << "\" [label=\"" << e.rule << "\"];\n";
    os << "}\n";
    return os.str();
}

std::vector<std::string> canonical_endpoints(const SchemeDAG& dag) {
    std::set<std::string> out;
    for (auto n : dag.endpoints()) {
        while (!n.empty() && n.back() == '*') n.pop_back();
        out.insert(n);
    }
    return {out.begin(), out.end()};
}

void hypersurface_step(SchemeDAG& dag, int d, int r) {
    if (d < 2) throw std::invalid_argument("hypersurface step needs degree >= 2");
    TheoryNode x = TheoryNode::hypersurface(d, r);
    TheoryNode x1 = TheoryNode::hypersurface(d - 1, r);
    TheoryNode i = TheoryNode::hypersurface(d - 1, r - 1);
    TheoryNode s = TheoryNode::bidegree_locus(d - 1, d, r - 1);
    TheoryNode b = TheoryNode::blowup(r - 1, d - 1, d);
    dag.add_edge(TheoryNode::starred(x).desc, "3",
                 {TheoryNode::starred(TheoryNode::pair(x1, i)).desc,
                  TheoryNode::pair(b, i).desc});
    dag.add_edge(TheoryNode::starred(TheoryNode::pair(x1, i)).desc, "2",
                 {TheoryNode::starred(x1).desc, i.desc});
    dag.add_edge(TheoryNode::pair(b, i).desc, "2", {b.desc, i.desc});
    dag.add_edge(b.desc, "l", {TheoryNode::projective(r - 1).desc, i.desc, s.desc});
}

SchemeDAG hypersurface_scheme(int d, int r) {
    SchemeDAG dag;
    hypersurface_step(dag, d, r);
    dag.validate_acyclic();
    return dag;
}

std::vector<std::string> blowup_dependencies(const std::string& v,
                                             const std::vector<std::string>& divisors,
                                             const std::string& z) {
    if (divisors.empty()) throw std::invalid_argument("blow-up needs at least one divisor");
    std::vector<std::string> out{v};
    std::string chain;
    for (size_t i = 0; i + 1 < divisors.size(); ++i) {
        chain = chain.empty() ? divisors[i] : chain + "^" + divisors[i];
        out.push_back(chain);
    }
    out.push_back(z);
    return out;
}

SchemeDAG quintic_scheme() {
    SchemeDAG dag;
    for (int d = 5; d >= 2; --d) hypersurface_step(dag, d, 4);
    dag.validate_acyclic();
    return dag;
}

}  // namespace relgw
