#include "relgw/solver.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace relgw {

void OracleTable::set(const std::string& ref, const Rat& value, const std::string& provenance) {
    entries[ref] = Entry{value, provenance};
}

std::optional<Rat> OracleTable::get(const std::string& ref) const {
    auto it = entries.find(ref);
    if (it == entries.end()) return std::nullopt;
    return it->second.value;
}

CycleError::CycleError(const std::string& p, const std::string& b)
    : std::runtime_error("cyclic dependency: " + p + " <-> " + b), principal(p), blocker(b) {}

MissingOracleError::MissingOracleError(const std::string& r)
    : std::runtime_error("missing oracle value: " + r), ref(r) {}

ZeroPrincipalCoefficientError::ZeroPrincipalCoefficientError(const std::string& p)
    : std::runtime_error("zero principal coefficient for " + p), principal(p) {}

namespace {

// Value of a reference: solved principal first, then oracle.
std::optional<Rat> lookup(const std::string& ref, const std::map<std::string, Rat>& solved,
                          const OracleTable& oracles) {
    auto it = solved.find(ref);
    if (it != solved.end()) return it->second;
    return oracles.get(ref);
}

// Rhs contribution of one coefficient-times-reference product.  A slot
// product vanishes with a zero base value; otherwise all slots must resolve.
Rat contribution(const TermCoeff& coeff, const Rat& base_value, const OracleTable& oracles) {
    if (base_value == 0) return 0;
    Rat v = coeff.value * base_value;
    for (const auto& s : coeff.slots) {
        auto sv = oracles.get(s);
        if (!sv) throw MissingOracleError(s);
        v *= *sv;
    }
    return v;
}

Rat solve_equation(const Equation& eq, const std::map<std::string, Rat>& solved,
                   const OracleTable& oracles, std::vector<std::string>* log) {
    if (eq.principal_coeff == 0) throw ZeroPrincipalCoefficientError(eq.principal.str());
    Rat rhs = 0;
    for (const auto& t : eq.terms) {
        auto v = lookup(t.key.str(), solved, oracles);
        if (!v) throw MissingOracleError(t.key.str());
        Rat c = contribution(t.coeff, *v, oracles);
        rhs += c;
        if (log)
            log->push_back("term " + t.coeff.str() + " * [" + t.key.str() +
                           " = " + rat_str(*v) + "] -> " + rat_str(c));
    }
    for (const auto& t : eq.oracle_terms) {
        auto v = oracles.get(t.ref);
        if (!v) throw MissingOracleError(t.ref);
        Rat c = contribution(t.coeff, *v, oracles);
        rhs += c;
        if (log)
            log->push_back("oracle " + t.coeff.str() + " * [" + t.ref + " = " + rat_str(*v) +
                           "] -> " + rat_str(c));
    }
    Rat x = rhs / eq.principal_coeff;
    if (log)
        log->push_back("principal " + rat_str(eq.principal_coeff) + " * x = " + rat_str(rhs) +
                       "  =>  x = " + rat_str(x));
    return x;
}

}  // namespace

SolveResult solve(const std::vector<Equation>& eqs, const OracleTable& oracles) {
    SolveResult res;
    std::map<std::string, const Equation*> pending;  // principal -> defining equation
    for (const auto& e : eqs) {
        std::string p = e.principal.str();
        if (!pending.emplace(p, &e).second)
            throw std::runtime_error("duplicate principal: " + p);
    }
    std::set<std::string> principals;
    for (const auto& [p, _] : pending) principals.insert(p);

    while (!pending.empty()) {
        // An equation is ready when every term reference is solved or oracular.
        const Equation* next = nullptr;
        std::string next_key;
        std::map<std::string, std::string> blockers;  // principal -> blocking ref
        for (const auto& [p, e] : pending) {
            bool ready = true;
            for (const auto& t : e->terms) {
                std::string ref = t.key.str();
                if (ref == p) {
                    blockers[p] = ref;
                    ready = false;
                    break;
                }
                if (!lookup(ref, res.values, oracles)) {
                    if (!principals.count(ref)) throw MissingOracleError(ref);
                    blockers[p] = ref;
                    ready = false;
                    break;
                }
            }
            if (ready && (!next || p < next_key)) {
                next = e;
                next_key = p;
            }
        }
        if (!next) {
            const auto& [p, b] = *blockers.begin();
            throw CycleError(p, b);
        }
        std::vector<std::string> log;
        Rat x = solve_equation(*next, res.values, oracles, &log);
        res.values[next_key] = x;
        res.derivations[next_key] = std::move(log);
        res.order.push_back(next_key);
        pending.erase(next_key);
    }
    return res;
}

void verify(const std::vector<Equation>& eqs, const SolveResult& result,
            const OracleTable& oracles) {
    for (const auto& e : eqs) {
        auto pv = lookup(e.principal.str(), result.values, oracles);
        if (!pv) throw MissingOracleError(e.principal.str());
        Rat rhs = 0;
        for (const auto& t : e.terms) {
            auto v = lookup(t.key.str(), result.values, oracles);
            if (!v) throw MissingOracleError(t.key.str());
            rhs += contribution(t.coeff, *v, oracles);
        }
        for (const auto& t : e.oracle_terms) {
            auto v = oracles.get(t.ref);
            if (!v) throw MissingOracleError(t.ref);
            rhs += contribution(t.coeff, *v, oracles);
        }
        Rat residual = e.principal_coeff * (*pv) - rhs;
        if (residual != 0)
            throw std::runtime_error("nonzero residual " + rat_str(residual) + " for " +
                                     e.principal.str());
    }
}

std::string explain(const SolveResult& result, const std::string& principal) {
    auto it = result.derivations.find(principal);
    if (it == result.derivations.end())
        throw std::runtime_error("no derivation recorded for " + principal);
    std::ostringstream os;
    os << principal << "\n";
    for (const auto& line : it->second) os << "  " << line << "\n";
    return os.str();
}

}  // namespace relgw
