#include "relgw/p1theory.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

namespace relgw {

PlainPartition PlainPartition::make(std::vector<long> parts) {
    for (long p : parts)
        if (p < 1) throw std::invalid_argument("partition parts must be positive");
    std::sort(parts.begin(), parts.end(), std::greater<long>());
    return PlainPartition{std::move(parts)};
}

long PlainPartition::n() const {
    long s = 0;
    for (long p : parts) s += p;
    return s;
}

Rat PlainPartition::z() const {
    Rat z = 1;
    std::map<long, long> counts;
    for (long p : parts) {
        z *= p;
        counts[p]++;
    }
    for (const auto& [_, c] : counts) z *= factorial(c);
    return z;
}

std::string PlainPartition::str() const {
    std::ostringstream os;
    os << "(";
    for (size_t i = 0; i < parts.size(); ++i) {
        if (i) os << ",";
        os << parts[i];
    }
    os << ")";
    return os.str();
}

std::vector<PlainPartition> partitions_of(long n) {
    std::vector<PlainPartition> out;
    std::vector<long> cur;
    std::function<void(long, long)> rec = [&](long rem, long maxp) {
        if (rem == 0) {
            out.push_back(PlainPartition{cur});
            return;
        }
        for (long p = std::min(rem, maxp); p >= 1; --p) {
            cur.push_back(p);
            rec(rem - p, p);
            cur.pop_back();
        }
    };
    rec(n, n);
    return out;
}

namespace {

// Murnaghan-Nakayama on beta-numbers: removing a length-r border strip moves
// one beta-number down by r; the sign is the parity of beta-numbers crossed.
long mn_character(const std::vector<long>& lambda, const std::vector<long>& rho, size_t ri,
                  std::map<std::pair<std::vector<long>, size_t>, long>& memo) {
    if (ri == rho.size()) return 1;  // lambda is empty here by size bookkeeping
    auto key = std::make_pair(lambda, ri);
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
    long r = rho[ri];
    size_t l = lambda.size();
    std::vector<long> beta(l);
    for (size_t i = 0; i < l; ++i) beta[i] = lambda[i] + (long)(l - 1 - i);
    std::set<long> bset(beta.begin(), beta.end());
    long total = 0;
    for (size_t i = 0; i < l; ++i) {
        long target = beta[i] - r;
        if (target < 0 || bset.count(target)) continue;
        int crossed = 0;
        for (long b : beta)
            if (b > target && b < beta[i]) ++crossed;
        std::vector<long> nb = beta;
        nb[i] = target;
        std::sort(nb.begin(), nb.end(), std::greater<long>());
        std::vector<long> nl;
        for (size_t j = 0; j < nb.size(); ++j) {
            long part = nb[j] - (long)(l - 1 - j);
            if (part < 0) throw std::runtime_error("mn: malformed beta numbers");
            if (part > 0) nl.push_back(part);
        }
        long sign = (crossed % 2 == 0) ? 1 : -1;
        total += sign * mn_character(nl, rho, ri + 1, memo);
    }
    memo[key] = total;
    return total;
}

std::map<std::pair<std::vector<long>, std::vector<long>>, long> g_char_cache;

}  // namespace

long character(const PlainPartition& lambda, const PlainPartition& rho) {
    if (lambda.n() != rho.n()) throw std::invalid_argument("character: size mismatch");
    auto ck = std::make_pair(lambda.parts, rho.parts);
    auto it = g_char_cache.find(ck);
    if (it != g_char_cache.end()) return it->second;
    std::map<std::pair<std::vector<long>, size_t>, long> memo;
    long v = mn_character(lambda.parts, rho.parts, 0, memo);
    g_char_cache[ck] = v;
    return v;
}

CharacterTable character_table(long n) {
    CharacterTable t;
    t.n = n;
    t.classes = partitions_of(n);
    Rat nf = factorial(n);
    for (const auto& rho : t.classes) {
        Rat cs = nf / rho.z();
        if (cs.get_den() != 1) throw std::runtime_error("class size not integral");
        t.class_sizes[rho] = cs.get_num().get_si();
    }
    PlainPartition ones = PlainPartition::make(std::vector<long>((size_t)n, 1));
    for (const auto& lam : t.classes) {
        t.dimensions[lam] = character(lam, ones);
        for (const auto& rho : t.classes) t.values[{lam, rho}] = character(lam, rho);
    }
    return t;
}

Rat frobenius_tuple_count(long d, const std::vector<PlainPartition>& profiles) {
    for (const auto& p : profiles)
        if (p.n() != d) throw std::invalid_argument("profile size mismatch");
    Rat df = factorial(d);
    Rat pref = 1 / df;
    for (const auto& p : profiles) pref *= df / p.z();  // class sizes
    Rat sum = 0;
    for (const auto& lam : partitions_of(d)) {
        Rat dim = Rat(character(lam, PlainPartition::make(std::vector<long>((size_t)d, 1))));
        Rat term = dim * dim;  // dim^{2-k} * prod chi
        for (const auto& rho : profiles) term *= Rat(character(lam, rho)) / dim;
        sum += term;
    }
    return pref * sum;
}

namespace {

Rat binom(long n, long k) {
    if (k < 0 || k > n) return 0;
    mpz_class b;
    mpz_bin_uiui(b.get_mpz_t(), (unsigned long)n, (unsigned long)k);
    return Rat(b);
}

// All distinct sub-multisets of rho with total size m.
std::vector<std::pair<PlainPartition, PlainPartition>> profile_splits(const PlainPartition& rho,
                                                                      long m) {
    std::map<long, long> counts;
    for (long p : rho.parts) counts[p]++;
    std::vector<std::pair<long, long>> items(counts.begin(), counts.end());
    std::vector<std::pair<PlainPartition, PlainPartition>> out;
    std::vector<long> in, outp;
    std::function<void(size_t, long)> rec = [&](size_t i, long rem) {
        if (i == items.size()) {
            if (rem == 0)
                out.push_back({PlainPartition::make(in), PlainPartition::make(outp)});
            return;
        }
        auto [val, cnt] = items[i];
        for (long take = 0; take <= cnt && take * val <= rem; ++take) {
            for (long t = 0; t < take; ++t) in.push_back(val);
            for (long t = take; t < cnt; ++t) outp.push_back(val);
            rec(i + 1, rem - take * val);
            for (long t = 0; t < take; ++t) in.pop_back();
            for (long t = take; t < cnt; ++t) outp.pop_back();
        }
    };
    rec(0, m);
    return out;
}

std::map<std::pair<long, std::vector<std::vector<long>>>, Rat> g_trans_cache;

}  // namespace

Rat transitive_tuple_count(long d, const std::vector<PlainPartition>& profiles) {
    std::vector<std::vector<long>> pkey;
    for (const auto& p : profiles) pkey.push_back(p.parts);
    auto ck = std::make_pair(d, pkey);
    auto it = g_trans_cache.find(ck);
    if (it != g_trans_cache.end()) return it->second;
    Rat total = frobenius_tuple_count(d, profiles);
    for (long dp = 1; dp < d; ++dp) {
        // Orbit of letter 1 has size dp: choose its other dp-1 letters, split
        // every profile compatibly.
        std::function<void(size_t, std::vector<PlainPartition>, std::vector<PlainPartition>)>
            rec = [&](size_t i, std::vector<PlainPartition> left,
                      std::vector<PlainPartition> right) {
                if (i == profiles.size()) {
                    total -= binom(d - 1, dp - 1) * transitive_tuple_count(dp, left) *
                             frobenius_tuple_count(d - dp, right);
                    return;
                }
                for (auto& [a, b] : profile_splits(profiles[i], dp)) {
                    auto l = left, r = right;
                    l.push_back(a);
                    r.push_back(b);
                    rec(i + 1, std::move(l), std::move(r));
                }
            };
        rec(0, {}, {});
    }
    g_trans_cache[ck] = total;
    return total;
}

Rat hurwitz_number(long g, long d, const std::vector<PlainPartition>& profiles,
                   bool connected) {
    if (d < 1) throw std::invalid_argument("degree must be positive");
    for (const auto& p : profiles)
        if (p.n() != d) throw std::invalid_argument("profile size mismatch");
    // Riemann-Hurwitz: chi = 2d - sum (d - l(rho_i)); the cover's (possibly
    // disconnected, chi-defined) genus must match.
    long chi = 2 * d;
    for (const auto& p : profiles) chi -= d - p.length();
    if (chi != 2 - 2 * g) return 0;
    if (d == 1) return 1;
    Rat count = connected ? transitive_tuple_count(d, profiles)
                          : frobenius_tuple_count(d, profiles);
    return count / factorial(d);
}

FiberConstant fiber_constant(const SlotDescriptor& slot) {
    if (const auto* p = std::get_if<Relation1PrincipalSlot>(&slot)) {
        if (p->n_inf < 0) throw std::invalid_argument("negative divisor intersection");
        Rat c = 1;
        for (const auto& part : p->nu.parts) c /= factorial(part.mult - 1);
        for (int i = 0; i < p->nu.id_count(); ++i) c *= p->n_inf;
        return c;
    }
    if (const auto* c = std::get_if<TotallyRamifiedCapSlot>(&slot)) {
        if (c->d < 1) throw std::invalid_argument("cap degree must be positive");
        return c->divisor_factor / factorial(c->d);
    }
    return Unresolved{std::get<GenericSlot>(slot).name};
}

}  // namespace relgw
