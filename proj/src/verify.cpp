#include "hilbq/verify.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "json.hpp"

namespace hilbq {

IdentityReport compare_series(const std::string& identity, const std::string& model,
                              const ZQSeries& lhs_in, const ZQSeries& rhs_in) {
    IdentityReport rep;
    rep.identity = identity;
    rep.model = model;
    ZQSeries lhs = lhs_in, rhs = rhs_in;
    if (lhs.nz() != rhs.nz()) {
        if (lhs.z_free() && rhs.z_free()) {
            lhs = lhs.coe_z0();
            rhs = rhs.coe_z0();
        } else {
            rep.qmax = std::min(lhs.qmax(), rhs.qmax());
            rep.pass = false;
            rep.note = "z-variable arity mismatch with nontrivial z content";
            return rep;
        }
    }
    int qmax = std::min(lhs.qmax(), rhs.qmax());
    lhs = lhs.truncated(qmax);
    rhs = rhs.truncated(qmax);
    rep.qmax = qmax;
    std::set<TermKey> keys;
    for (auto& [k, c] : lhs.terms()) keys.insert(k);
    for (auto& [k, c] : rhs.terms()) keys.insert(k);
    for (const auto& k : keys) {
        Rational a = lhs.coeff(k.q, k.z), b = rhs.coeff(k.q, k.z);
        if (a != b) {
            rep.pass = false;
            rep.mismatch = Mismatch{k.q, k.z, a, b};
            return rep;
        }
    }
    rep.pass = true;
    return rep;
}

IdentityReport compare_rational(const std::string& identity, const std::string& model, int order,
                                const Rational& lhs, const Rational& rhs) {
    IdentityReport rep;
    rep.identity = identity;
    rep.model = model;
    rep.qmax = order;
    rep.pass = (lhs == rhs);
    if (!rep.pass) rep.mismatch = Mismatch{order, {}, lhs, rhs};
    return rep;
}

ZQSeries chi_extrapolate(const std::vector<std::pair<Rational, ZQSeries>>& family, const Rational& target,
                         const std::function<int(int)>& degree_bound) {
    if (family.empty()) throw std::invalid_argument("chi_extrapolate: empty family");
    std::function<int(int)> bound = degree_bound;
    if (!bound) bound = [](int q) { return q; };
    const int n = int(family.size());
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (family[size_t(i)].first == family[size_t(j)].first)
                throw std::invalid_argument("chi_extrapolate: repeated chi sample");
    int qmax = family.front().second.qmax();
    int nz = family.front().second.nz();
    for (auto& [chi, s] : family)
        if (s.qmax() != qmax || s.nz() != nz)
            throw std::invalid_argument("chi_extrapolate: inconsistent series shapes");

    std::set<TermKey> keys;
    for (auto& [chi, s] : family)
        for (auto& [k, c] : s.terms()) keys.insert(k);
    ZQSeries out(qmax, nz);
    for (const auto& key : keys) {
        if (n < bound(key.q) + 1)
            throw std::invalid_argument("chi_extrapolate: insufficient samples for degree bound at q^" +
                                        std::to_string(key.q));
        Rational acc = 0;
        for (int i = 0; i < n; ++i) {
            Rational li = family[size_t(i)].second.coeff(key.q, key.z);
            if (li == 0) continue;
            for (int j = 0; j < n; ++j) {
                if (j == i) continue;
                li *= (target - family[size_t(j)].first) / (family[size_t(i)].first - family[size_t(j)].first);
            }
            acc += li;
        }
        out.add_term(key.q, key.z, acc);
    }
    return out;
}

bool all_pass(const std::vector<IdentityReport>& reports) {
    for (auto& r : reports)
        if (!r.pass) return false;
    return true;
}

std::string reports_to_json(const std::vector<IdentityReport>& reports) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& r : reports) {
        nlohmann::ordered_json j;
        j["identity"] = r.identity;
        j["model"] = r.model;
        j["Qmax"] = r.qmax;
        j["status"] = r.pass ? "pass" : "fail";
        if (r.mismatch) {
            nlohmann::ordered_json m;
            m["q"] = r.mismatch->q;
            m["z"] = r.mismatch->z;
            m["lhs"] = rat_str(r.mismatch->lhs);
            m["rhs"] = rat_str(r.mismatch->rhs);
            j["mismatch"] = std::move(m);
        }
        if (!r.note.empty()) j["note"] = r.note;
        arr.push_back(std::move(j));
    }
    return arr.dump(2);
}

namespace {

// splitmix64: deterministic, seed-stable across platforms
struct Rng {
    uint64_t state;
    explicit Rng(uint64_t seed) : state(seed) {}
    uint64_t next() {
        uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
    int uniform(int lo, int hi) { return lo + int(next() % uint64_t(hi - lo + 1)); }
    Rational small_rat() {
        int num = uniform(-4, 4);
        int den = uniform(1, 3);
        return rat(num, den);
    }
    Rational small_rat_nonzero() {
        Rational r = small_rat();
        return r == 0 ? Rational(1) : r;
    }
};

CohClass random_class(const SurfaceModel& X, Rng& rng, bool zero_c0 = false) {
    CohClass c = X.zero_class();
    if (!zero_c0) c.c0 = rng.small_rat();
    for (auto& v : c.c2) v = rng.small_rat();
    c.c4 = rng.small_rat();
    return c;
}

CohClass random_deg2(const SurfaceModel& X, Rng& rng) {
    CohClass c = X.zero_class();
    for (auto& v : c.c2) v = rng.small_rat();
    return c;
}

CreationMonomial random_monomial(const SurfaceModel& X, Rng& rng, int maxWeight) {
    CreationMonomial m;
    int w = rng.uniform(0, maxWeight);
    while (w > 0) {
        int p = rng.uniform(1, w);
        m.insert(p, rng.uniform(0, X.basis_size() - 1));
        w -= p;
    }
    return m;
}

FockVec<Rational> random_vec(const SurfaceModel& X, Rng& rng, int maxWeight, int nterms) {
    FockVec<Rational> v;
    for (int t = 0; t < nterms; ++t)
        fock_add(v, random_monomial(X, rng, maxWeight), rng.small_rat_nonzero());
    return v;
}

template <class C>
bool fock_equal(const FockVec<C>& a, const FockVec<C>& b) {
    if (a.size() != b.size()) return false;
    auto ia = a.begin();
    auto ib = b.begin();
    for (; ia != a.end(); ++ia, ++ib) {
        if (!(ia->first == ib->first)) return false;
        if (!(ia->second == ib->second)) return false;
    }
    return true;
}

FockVec<ZQSeries> to_series_vec(const FockVec<Rational>& v, int qmax, int nz) {
    FockVec<ZQSeries> out;
    for (auto& [m, c] : v) out.emplace(m, ZQSeries::constant(qmax, nz, c));
    return out;
}

FockVec<ZQSeries> fock_mul_series(const FockVec<ZQSeries>& v, const ZQSeries& s) {
    FockVec<ZQSeries> out;
    for (auto& [m, c] : v) fock_add(out, m, c * s);
    return out;
}

// Drops series terms with any |z exponent| beyond the window; the vertex
// operator expansions are complete only inside it.
FockVec<ZQSeries> restrict_window(const FockVec<ZQSeries>& v, int win) {
    FockVec<ZQSeries> out;
    for (auto& [m, c] : v) {
        ZQSeries f(c.qmax(), c.nz());
        for (auto& [k, r] : c.terms()) {
            bool ok = true;
            for (int e : k.z)
                if (std::abs(e) > win) ok = false;
            if (ok) f.add_term(k.q, k.z, r);
        }
        fock_add(out, m, f);
    }
    return out;
}

// exp((z^{zdir*n}/n) a_{sign*n}(gamma)) truncated at t <= tmax applications,
// on one z slot. sign = -1 gives the creation half, +1 the annihilation.
FockVec<ZQSeries> apply_exp_single(const SurfaceModel& X, int sign, int n, const CohClass& gamma,
                                   int zslot, const FockVec<ZQSeries>& v, int tmax, int zdir) {
    if (v.empty()) return v;
    const int nz = v.begin()->second.nz();
    FockVec<ZQSeries> out = v;
    FockVec<ZQSeries> cur = v;
    Rational fac = 1;
    for (int t = 1; t <= tmax; ++t) {
        cur = apply_heisenberg(X, sign * n, gamma, cur);
        if (cur.empty()) break;
        fac /= Rational(n) * Rational(t);
        std::vector<int> dz(size_t(nz), 0);
        dz.at(size_t(zslot)) = zdir * n * t;
        for (auto& [m, c] : cur) fock_add(out, m, c.shifted(0, dz, fac));
    }
    return out;
}

CohClass cup_pow(const SurfaceModel& X, const CohClass& g, int i) {
    CohClass acc = X.one();
    for (int t = 0; t < i; ++t) acc = X.cup(acc, g);
    return acc;
}

IdentityReport property_report(const std::string& name, const std::string& model, int instances,
                               int failed_at, const std::string& detail) {
    IdentityReport rep;
    rep.identity = name;
    rep.model = model;
    rep.qmax = instances;
    rep.pass = failed_at < 0;
    if (!rep.pass) rep.note = "failed at instance " + std::to_string(failed_at) + (detail.empty() ? "" : ": " + detail);
    return rep;
}

ZQSeries reduced_coe_z0(const ZQSeries& s, int chi, int qmax) {
    return s.coe_z0() * euler_pow(chi, qmax);
}

// The degree-two hook generating series in closed form: the coefficient of
// z^0 in (1/2)(sum (n-1) q^n/(1-q^n)^2 + sum (qz)^n/(1-q^n) (...)).
ZQSeries g_series_closed(int qmax) {
    ZQSeries inner = ZQSeries::zero(qmax, 0);
    for (int n = 1; n <= qmax; ++n) inner += block(n, 2, 1, 0, qmax).scaled(n - 1);
    inner += mzv_bracket({{{1, 1, 0}}, {{2, 0, 0}}}, qmax);
    inner += mzv_bracket({{{1, 1, 0}}, {{1, 0, 0}, {1, 0, 0}}}, qmax).scaled(2);
    return inner.scaled(rat(1, 2));
}

}  // namespace

namespace suites {

std::vector<IdentityReport> gottsche(int qmax, const std::vector<SurfaceModel>& models) {
    std::vector<IdentityReport> out;
    for (const auto& X : models) {
        FockSpace fs(X);
        ZQSeries tr = oracle_f(X, fs, {}, {}, qmax);
        out.push_back(compare_series("gottsche", X.name(), tr, euler_pow(-X.chi(), qmax)));
        IdentityReport zf;
        zf.identity = "z-free:gottsche";
        zf.model = X.name();
        zf.qmax = qmax;
        zf.pass = tr.z_free();
        out.push_back(zf);
    }
    return out;
}

std::vector<IdentityReport> f0(int qmax, const std::vector<SurfaceModel>& models) {
    std::vector<IdentityReport> out;
    for (const auto& X : models) {
        FockSpace fs(X);
        std::vector<std::pair<std::string, CohClass>> alphas = {
            {"1_X", X.one()}, {"K", X.canonical()}, {"e1", X.basis_class(1)}, {"x", X.point()}};
        for (auto& [nm, alpha] : alphas) {
            ZQSeries tr = oracle_f(X, fs, {0}, {alpha}, qmax);
            out.push_back(compare_series("F0[" + nm + "]", X.name(), tr, closed_f0(X, alpha, qmax)));
            IdentityReport zf;
            zf.identity = "z-free:F0[" + nm + "]";
            zf.model = X.name();
            zf.qmax = qmax;
            zf.pass = tr.z_free();
            out.push_back(zf);
        }
        // F^{1_X}_0 = q d/dq of the Euler product power
        ZQSeries tr1 = oracle_f(X, fs, {0}, {X.one()}, qmax);
        out.push_back(compare_series("F0-qddq[1_X]", X.name(), tr1, euler_pow(-X.chi(), qmax).q_ddq()));
    }
    return out;
}

std::vector<IdentityReport> f1(int qmax) {
    std::vector<IdentityReport> out;
    SurfaceModel X = SurfaceModel::preset("kpos");
    FockSpace fs(X);
    CohClass L = X.line_bundle("L1");
    ZQSeries tr = oracle_f(X, fs, {1}, {L}, qmax);
    out.push_back(compare_series("F1[L1]", X.name(), tr, closed_f1(X, L, qmax)));
    IdentityReport zf;
    zf.identity = "z-free:F1[L1]";
    zf.model = X.name();
    zf.qmax = qmax;
    zf.pass = tr.z_free();
    out.push_back(zf);
    return out;
}

std::vector<IdentityReport> fk_point(int qmax) {
    std::vector<IdentityReport> out;
    SurfaceModel X = SurfaceModel::preset("two-class");
    FockSpace fs(X);
    for (int k = 0; k <= 4; ++k) {
        ZQSeries tr = oracle_f(X, fs, {k}, {X.point()}, qmax);
        out.push_back(compare_series("Fk-point[k=" + std::to_string(k) + "]", X.name(), tr,
                                     closed_fk_point(1, k, X.chi(), qmax)));
        if (k % 2) {
            IdentityReport odd;
            odd.identity = "Fk-point-odd-zero[k=" + std::to_string(k) + "]";
            odd.model = X.name();
            odd.qmax = qmax;
            odd.pass = tr.is_zero();
            out.push_back(odd);
        }
        IdentityReport zf;
        zf.identity = "z-free:Fk-point[k=" + std::to_string(k) + "]";
        zf.model = X.name();
        zf.qmax = qmax;
        zf.pass = tr.z_free();
        out.push_back(zf);
    }
    return out;
}

std::vector<IdentityReport> w_trace_closed(int qmax) {
    std::vector<IdentityReport> out;
    SurfaceModel X = SurfaceModel::preset("kpos");
    FockSpace fs(X);
    std::vector<std::pair<std::string, CohClass>> alphas = {
        {"1_X", X.one()}, {"L", X.line_bundle("L1")}, {"x", X.point()}};
    for (int len = 2; len <= 4; ++len) {
        for (const auto& lam : enum_balanced(len, 4)) {
            for (auto& [nm, alpha] : alphas) {
                ZQSeries tr = oracle_trace_product(X, fs, {lam}, {alpha}, true, qmax);
                out.push_back(compare_series("wtrace[" + lam.str() + ";" + nm + "]", X.name(), tr,
                                             closed_w_trace(X, lam, alpha, qmax)));
            }
        }
    }
    return out;
}

std::vector<IdentityReport> theta_routes(int qmax) {
    std::vector<IdentityReport> out;
    SurfaceModel X = SurfaceModel::preset("kpos");
    std::vector<std::pair<std::string, CohClass>> alphas = {
        {"x", X.point()}, {"1_X", X.one()}, {"K", X.canonical()}};
    for (int k = 0; k <= 4; ++k)
        for (auto& [nm, alpha] : alphas)
            out.push_back(compare_series("theta-routes[k=" + std::to_string(k) + ";" + nm + "]", X.name(),
                                         theta(X, alpha, k, qmax, ThetaRoute::Compositions),
                                         theta(X, alpha, k, qmax, ThetaRoute::GenPartitions)));
    // spot value: weight-2 theta of the point class is the divisor-sum series
    ZQSeries sig = ZQSeries::zero(qmax, 0);
    for (int n = 1; n <= qmax; ++n) sig.add_term(n, {}, Rational(sigma1(unsigned(n))));
    out.push_back(compare_series("theta-sigma1[k=0;x]", X.name(),
                                 theta(X, X.point(), 0, qmax, ThetaRoute::Compositions), sig));
    return out;
}

std::vector<IdentityReport> fock_properties(int instances) {
    std::vector<IdentityReport> out;
    SurfaceModel Xk = SurfaceModel::preset("kpos");
    SurfaceModel X2 = SurfaceModel::preset("two-class");

    // Heisenberg commutation relation
    {
        Rng rng(101);
        int failed = -1;
        std::string detail;
        for (int i = 0; i < instances && failed < 0; ++i) {
            const SurfaceModel& X = (i % 2) ? Xk : X2;
            int m = rng.uniform(1, 3) * (rng.uniform(0, 1) ? 1 : -1);
            int n = rng.uniform(1, 3) * (rng.uniform(0, 1) ? 1 : -1);
            CohClass a = random_class(X, rng), b = random_class(X, rng);
            auto v = random_vec(X, rng, 4, 2);
            auto lhs = fock_sum(apply_heisenberg(X, m, a, apply_heisenberg(X, n, b, v)),
                                fock_scale(apply_heisenberg(X, n, b, apply_heisenberg(X, m, a, v)), -1));
            Rational c = (m == -n) ? Rational(-m) * X.pair(a, b) : Rational(0);
            auto rhs = fock_scale(v, c);
            if (!fock_equal(lhs, rhs)) {
                failed = i;
                detail = "m=" + std::to_string(m) + " n=" + std::to_string(n);
            }
        }
        out.push_back(property_report("commutator", "kpos|two-class", instances, failed, detail));
    }

    // commutator of two normal-ordered products (diagonal-product expansion)
    {
        Rng rng(202);
        int failed = -1;
        for (int i = 0; i < instances && failed < 0; ++i) {
            const SurfaceModel& X = (i % 2) ? Xk : X2;
            int kk = rng.uniform(1, 3), ss = rng.uniform(1, 3);
            std::vector<int> ns, ms;
            for (int t = 0; t < kk; ++t) ns.push_back(rng.uniform(1, 3) * (rng.uniform(0, 1) ? 1 : -1));
            for (int t = 0; t < ss; ++t) ms.push_back(rng.uniform(1, 3) * (rng.uniform(0, 1) ? 1 : -1));
            CohClass a = random_class(X, rng), b = random_class(X, rng);
            auto v = random_vec(X, rng, 3, 2);
            auto lhs = fock_sum(apply_sequence(X, ns, a, apply_sequence(X, ms, b, v)),
                                fock_scale(apply_sequence(X, ms, b, apply_sequence(X, ns, a, v)), -1));
            FockVec<Rational> rhs;
            CohClass ab = X.cup(a, b);
            for (int t = 0; t < kk; ++t) {
                for (int j = 0; j < ss; ++j) {
                    if (ns[size_t(t)] != -ms[size_t(j)]) continue;
                    std::vector<int> seq;
                    for (int l = 0; l < j; ++l) seq.push_back(ms[size_t(l)]);
                    for (int u = 0; u < kk; ++u)
                        if (u != t) seq.push_back(ns[size_t(u)]);
                    for (int l = j + 1; l < ss; ++l) seq.push_back(ms[size_t(l)]);
                    // the empty product applied to a class integrates it
                    FockVec<Rational> term = seq.empty() ? fock_scale(v, X.pair(X.one(), ab))
                                                         : apply_sequence(X, seq, ab, v);
                    for (auto& [mm, cc] : term) fock_add(rhs, mm, Rational(cc * Rational(-ns[size_t(t)])));
                }
            }
            if (!fock_equal(lhs, rhs)) failed = i;
        }
        out.push_back(property_report("product-commutator", "kpos|two-class", instances, failed, ""));
    }

    // swapping adjacent factors inside a normal-ordered product
    {
        Rng rng(303);
        int failed = -1;
        for (int i = 0; i < instances && failed < 0; ++i) {
            const SurfaceModel& X = (i % 2) ? Xk : X2;
            int kk = rng.uniform(2, 4);
            std::vector<int> ns;
            for (int t = 0; t < kk; ++t) ns.push_back(rng.uniform(1, 3) * (rng.uniform(0, 1) ? 1 : -1));
            int j = rng.uniform(0, kk - 2);
            CohClass a = random_class(X, rng);
            auto v = random_vec(X, rng, 3, 2);
            auto lhs = apply_sequence(X, ns, a, v);
            std::vector<int> swapped = ns;
            std::swap(swapped[size_t(j)], swapped[size_t(j + 1)]);
            auto rhs = apply_sequence(X, swapped, a, v);
            if (ns[size_t(j)] == -ns[size_t(j + 1)]) {
                std::vector<int> rest;
                for (int u = 0; u < kk; ++u)
                    if (u != j && u != j + 1) rest.push_back(ns[size_t(u)]);
                CohClass ea = X.cup(X.euler_class(), a);
                FockVec<Rational> corr = rest.empty() ? fock_scale(v, X.pair(X.one(), ea))
                                                      : apply_sequence(X, rest, ea, v);
                for (auto& [mm, cc] : corr) fock_add(rhs, mm, Rational(cc * Rational(-ns[size_t(j)])));
            }
            if (!fock_equal(lhs, rhs)) failed = i;
        }
        out.push_back(property_report("product-swap", "kpos|two-class", instances, failed, ""));
    }

    // half vertex operators of equal sign commute
    {
        Rng rng(404);
        int failed = -1;
        const int cap = 3;
        for (int i = 0; i < instances && failed < 0; ++i) {
            const SurfaceModel& X = (i % 2) ? Xk : X2;
            CohClass L = random_deg2(X, rng), Lp = random_deg2(X, rng);
            auto v = to_series_vec(random_vec(X, rng, 2, 2), 0, 2);
            auto ab = apply_gamma_plus(X, L, 0, apply_gamma_plus(X, Lp, 1, v, cap), cap);
            auto ba = apply_gamma_plus(X, Lp, 1, apply_gamma_plus(X, L, 0, v, cap), cap);
            auto cd = apply_gamma_minus(X, L, 0, apply_gamma_minus(X, Lp, 1, v, cap), cap);
            auto dc = apply_gamma_minus(X, Lp, 1, apply_gamma_minus(X, L, 0, v, cap), cap);
            if (!fock_equal(ab, ba) || !fock_equal(cd, dc)) failed = i;
        }
        out.push_back(property_report("gamma-same-sign-commute", "kpos|two-class", instances, failed, ""));
    }

    // exchange relation between the two halves
    {
        Rng rng(505);
        int failed = -1;
        const int cap = 3;
        for (int i = 0; i < instances && failed < 0; ++i) {
            const SurfaceModel& X = (i % 2) ? Xk : X2;
            CohClass L = random_deg2(X, rng), Lp = random_deg2(X, rng);
            Rational c = X.pair(L, Lp);
            auto v = to_series_vec(random_vec(X, rng, 2, 2), 0, 2);
            auto lhs = apply_gamma_plus(X, L, 0, apply_gamma_minus(X, Lp, 1, v, cap), cap);
            auto rhs0 = apply_gamma_minus(X, Lp, 1, apply_gamma_plus(X, L, 0, v, cap), cap);
            ZQSeries binfac(0, 2);
            for (int j = 0; j <= cap; ++j)
                binfac.add_term(0, {-j, j}, binom_rat(c, unsigned(j)) * Rational(j % 2 ? -1 : 1));
            auto rhs = fock_mul_series(rhs0, binfac);
            if (!fock_equal(restrict_window(lhs, cap), restrict_window(rhs, cap))) failed = i;
        }
        out.push_back(property_report("gamma-exchange", "kpos|two-class", instances, failed, ""));
    }

    // commuting a normalized product through the creation half of an exponential
    {
        Rng rng(606);
        int failed = -1;
        const int T = 2;
        for (int i = 0; i < instances && failed < 0; ++i) {
            const SurfaceModel& X = (i % 2) ? Xk : X2;
            int n = rng.uniform(1, 2);
            GenPartition lam;
            int len = rng.uniform(1, 3);
            for (int t = 0; t < len; ++t) lam.add(rng.uniform(1, 2) * (rng.uniform(0, 1) ? 1 : -1));
            CohClass alpha = random_class(X, rng);
            CohClass gamma = random_class(X, rng);
            auto v = to_series_vec(random_vec(X, rng, 2, 2), 0, 1);
            // lhs: exponential first, then a_lambda(alpha)/lambda!
            auto expv = apply_exp_single(X, -1, n, gamma, 0, v, T, +1);
            auto lhs = fock_scale(apply_a_lambda(X, lam, alpha, expv), Rational(1) / Rational(lam.factorial()));
            // rhs: contracted sum, then the exponential; the fully contracted
            // empty product integrates the class
            FockVec<ZQSeries> inner;
            for (int k = 0;; ++k) {
                auto rem = lam.minus([&] {
                    GenPartition s;
                    s.add(n, k);
                    return s;
                }());
                if (!rem) break;
                CohClass cls = X.cup(cup_pow(X, gamma, k), alpha);
                auto term = rem->empty() ? fock_scale(v, X.pair(X.one(), cls))
                                         : apply_a_lambda(X, *rem, cls, v);
                Rational f = Rational(k % 2 ? -1 : 1) / (Rational(factorial(unsigned(k))) * Rational(rem->factorial()));
                for (auto& [mm, cc] : term) {
                    std::vector<int> dz{n * k};
                    fock_add(inner, mm, cc.shifted(0, dz, f));
                }
                if (k > lam.length()) break;
            }
            auto rhs = apply_exp_single(X, -1, n, gamma, 0, inner, T, +1);
            if (!fock_equal(restrict_window(lhs, n * T), restrict_window(rhs, n * T))) failed = i;
        }
        out.push_back(property_report("exp-commute-creation", "kpos|two-class", instances, failed, ""));
    }

    // the adjoint identity: annihilation half against the product
    {
        Rng rng(707);
        int failed = -1;
        const int T = 2;
        for (int i = 0; i < instances && failed < 0; ++i) {
            const SurfaceModel& X = (i % 2) ? Xk : X2;
            int n = rng.uniform(1, 2);
            GenPartition lam;
            int len = rng.uniform(1, 3);
            for (int t = 0; t < len; ++t) lam.add(rng.uniform(1, 2) * (rng.uniform(0, 1) ? 1 : -1));
            CohClass alpha = random_class(X, rng);
            CohClass gamma = random_class(X, rng);
            auto v = to_series_vec(random_vec(X, rng, 3, 2), 0, 1);
            auto av = fock_scale(apply_a_lambda(X, lam, alpha, v), Rational(1) / Rational(lam.factorial()));
            auto lhs = apply_exp_single(X, +1, n, gamma, 0, av, T, +1);
            FockVec<ZQSeries> rhs;
            for (int k = 0;; ++k) {
                auto rem = lam.minus([&] {
                    GenPartition s;
                    s.add(-n, k);
                    return s;
                }());
                if (!rem) break;
                auto expv = apply_exp_single(X, +1, n, gamma, 0, v, T, +1);
                CohClass cls = X.cup(cup_pow(X, gamma, k), alpha);
                auto term = rem->empty() ? fock_scale(expv, X.pair(X.one(), cls))
                                         : apply_a_lambda(X, *rem, cls, expv);
                Rational f = Rational(k % 2 ? -1 : 1) / (Rational(factorial(unsigned(k))) * Rational(rem->factorial()));
                for (auto& [mm, cc] : term) {
                    std::vector<int> dz{n * k};
                    fock_add(rhs, mm, cc.shifted(0, dz, f));
                }
                if (k > lam.length()) break;
            }
            if (!fock_equal(restrict_window(lhs, n * T), restrict_window(rhs, n * T))) failed = i;
        }
        out.push_back(property_report("exp-commute-annihilation", "kpos|two-class", instances, failed, ""));
    }

    // pairing against the sum of fundamental classes splits off creation prefixes
    {
        Rng rng(808);
        int failed = -1;
        for (int i = 0; i < instances && failed < 0; ++i) {
            const SurfaceModel& X = (i % 2) ? Xk : X2;
            auto w = random_vec(X, rng, 3, 2);
            CreationMonomial g = random_monomial(X, rng, 3);
            FockVec<Rational> gw, gvac;
            {
                FockVec<Rational> vac{{CreationMonomial{}, Rational(1)}};
                gw = w;
                gvac = vac;
                for (auto& [p, b] : g.parts) {
                    gw = apply_heisenberg(X, -p, X.basis_class(b), gw);
                    gvac = apply_heisenberg(X, -p, X.basis_class(b), gvac);
                }
            }
            Rational lhs = vacuum_to_one(X, gw);
            Rational rhs = vacuum_to_one(X, gvac) * vacuum_to_one(X, w);
            if (lhs != rhs) failed = i;
        }
        out.push_back(property_report("splitting", "kpos|two-class", instances, failed, ""));
    }

    // vanishing of bare traces when every factor has length >= 2 and the
    // Euler class kills every alpha
    {
        Rng rng(909);
        int failed = -1;
        std::vector<GenPartition> pool;
        for (const auto& lam : enum_balanced(2, 3)) pool.push_back(lam);
        for (const auto& lam : enum_balanced(3, 3)) pool.push_back(lam);
        // plus unbalanced length-2 shapes, paired up to total sum zero below
        for (int a = 1; a <= 2; ++a)
            for (int b = 1; b <= 2; ++b) {
                GenPartition l1;
                l1.add(-a);
                l1.add(-b);
                pool.push_back(l1);
                GenPartition l2;
                l2.add(a);
                l2.add(b);
                pool.push_back(l2);
            }
        int done = 0;
        for (int i = 0; done < instances && failed < 0 && i < instances * 20; ++i) {
            const SurfaceModel& X = (i % 2) ? Xk : X2;
            FockSpace fs(X);
            int count = rng.uniform(1, 2);
            std::vector<GenPartition> lams;
            int total = 0;
            for (int t = 0; t < count; ++t) {
                const auto& lam = pool[size_t(rng.uniform(0, int(pool.size()) - 1))];
                total += lam.sum();
                lams.push_back(lam);
            }
            if (total != 0) continue;
            std::vector<CohClass> alphas;
            for (int t = 0; t < count; ++t) alphas.push_back(random_class(X, rng, /*zero_c0=*/true));
            ZQSeries tr = oracle_trace_product(X, fs, lams, alphas, false, 4);
            if (!tr.is_zero()) failed = done;
            ++done;
        }
        out.push_back(property_report("euler-kills-trace", "kpos|two-class", instances, failed, ""));
    }

    // permutation symmetry of trace products in the even setting
    {
        Rng rng(1010);
        int failed = -1;
        auto pool = enum_balanced(2, 3);
        for (int i = 0; i < 10 && failed < 0; ++i) {
            const SurfaceModel& X = (i % 2) ? Xk : X2;
            FockSpace fs(X);
            const auto& l1 = pool[size_t(rng.uniform(0, int(pool.size()) - 1))];
            const auto& l2 = pool[size_t(rng.uniform(0, int(pool.size()) - 1))];
            CohClass a1 = random_class(X, rng), a2 = random_class(X, rng);
            bool withW = rng.uniform(0, 1);
            ZQSeries t12 = oracle_trace_product(X, fs, {l1, l2}, {a1, a2}, withW, 4);
            ZQSeries t21 = oracle_trace_product(X, fs, {l2, l1}, {a2, a1}, withW, 4);
            if (!(t12 == t21)) failed = i;
        }
        out.push_back(property_report("trace-product-symmetry", "kpos|two-class", 10, failed, ""));
    }

    return out;
}

std::vector<IdentityReport> constants_table(int imax, int jmax) {
    std::vector<IdentityReport> out;
    ConstantsTable tab = b_table(imax, jmax);
    auto bval = [&](int i, int j) { return tab.b.at({i, j}).value; };

    out.push_back(compare_rational("b[(1^2)]", "-", 2, bval(1, 1), rat(3, 2)));
    out.push_back(compare_rational("b[(1^3)]", "-", 3, bval(1, 2), rat(4, 3)));
    out.push_back(compare_rational("b[(3)]", "-", 3, bval(3, 0), rat(-1, 3)));
    if (imax >= 5) out.push_back(compare_rational("b[(5)]", "-", 5, bval(5, 0), rat(2, 5)));
    if (imax >= 7) out.push_back(compare_rational("b[(7)]", "-", 7, bval(7, 0), rat(-5, 7)));

    for (int i = 2; i <= std::min(imax, 4); i += 2) {
        IdentityReport rep;
        rep.identity = "b-even-zero[i=" + std::to_string(i) + "]";
        rep.model = "-";
        rep.qmax = jmax;
        rep.pass = true;
        for (int j = 0; j <= jmax && i + j <= tab.qmax; ++j) {
            if (bval(i, j) != 0) {
                rep.pass = false;
                rep.mismatch = Mismatch{i + j, {}, bval(i, j), Rational(0)};
                break;
            }
        }
        out.push_back(rep);
    }

    for (int i = 2; i <= imax; ++i) {
        IdentityReport rep;
        rep.identity = "b-series-support[i=" + std::to_string(i) + "]";
        rep.model = "-";
        rep.qmax = tab.qmax;
        rep.pass = true;
        const auto& Bi = tab.B.at(i);
        for (auto& [k, c] : Bi.terms())
            if (k.q < i) {
                rep.pass = false;
                rep.mismatch = Mismatch{k.q, {}, c, Rational(0)};
                break;
            }
        out.push_back(rep);
    }
    return out;
}

std::vector<IdentityReport> fqxk(int qmax) {
    std::vector<IdentityReport> out;
    ConstantsTable tab = b_table(std::max(5, qmax), std::max(6, qmax));
    const int chi = 3;
    for (int k = 0; k <= 4; ++k) {
        out.push_back(compare_series("fqxk-closed[k=" + std::to_string(k) + "]", "chi=3",
                                     fqxk_eval({k}, tab, chi, qmax),
                                     closed_fk_point(1, k, chi, qmax)));
        out.push_back(compare_series("fqxk-routes[k=" + std::to_string(k) + "]", "chi=3",
                                     fqxk_eval({k}, tab, chi, qmax, InnerRoute::Collapsed),
                                     fqxk_eval({k}, tab, chi, qmax, InnerRoute::Expanded)));
    }
    SurfaceModel X = SurfaceModel::preset("minimal");
    FockSpace fs(X);
    for (int k1 = 0; k1 <= 4; ++k1) {
        for (int k2 = k1; k1 + k2 <= 4; ++k2) {
            ZQSeries tr = oracle_f(X, fs, {k1, k2}, {X.point(), X.point()}, qmax);
            out.push_back(compare_series(
                "fqxk-oracle[k=(" + std::to_string(k1) + "," + std::to_string(k2) + ")]", X.name(),
                fqxk_eval({k1, k2}, tab, X.chi(), qmax), tr));
            out.push_back(compare_series(
                "fqxk-routes[k=(" + std::to_string(k1) + "," + std::to_string(k2) + ")]", "chi=3",
                fqxk_eval({k1, k2}, tab, X.chi(), qmax, InnerRoute::Collapsed),
                fqxk_eval({k1, k2}, tab, X.chi(), qmax, InnerRoute::Expanded)));
        }
    }
    return out;
}

std::vector<IdentityReport> abelian(int qmax) {
    std::vector<IdentityReport> out;
    const Rational kkA = 1, kkB = 4;

    auto family_reduced_f1 = [&](const Rational& kscale) {
        std::vector<std::pair<Rational, ZQSeries>> fam;
        for (int r = 1; r <= qmax + 1; ++r) {
            SurfaceModel X = SurfaceModel::family_member(r, kscale);
            FockSpace fs(X);
            ZQSeries tr = oracle_f(X, fs, {1}, {X.one()}, qmax);
            fam.push_back({Rational(X.chi()), reduced_coe_z0(tr, X.chi(), qmax)});
        }
        return fam;
    };

    auto famA = family_reduced_f1(1);  // <K,K> = 1
    auto famB = family_reduced_f1(2);  // <K,K> = 4

    // extrapolation sanity: the interpolant reproduces a sampled chi exactly
    out.push_back(compare_series("extrapolation-sanity", "family[K=e1]",
                                 chi_extrapolate(famA, famA.front().first), famA.front().second));

    ZQSeries f0A = chi_extrapolate(famA, 0);
    ZQSeries f0B = chi_extrapolate(famB, 0);

    // g from F^L_1 on the kk=1, r=1 member where <L,K> = 1
    SurfaceModel XA1 = SurfaceModel::family_member(1, 1);
    FockSpace fsA1(XA1);
    ZQSeries redFL = reduced_coe_z0(oracle_f(XA1, fsA1, {1}, {XA1.line_bundle("L1")}, qmax), XA1.chi(), qmax);

    auto ext = extract_constants(f0A, kkA, f0B, kkB, redFL, 1, qmax);
    ZQSeries gclosed = g_series_closed(qmax);
    for (int j = 0; 2 + j <= qmax; ++j) {
        out.push_back(compare_rational("g-closed[j=" + std::to_string(j) + "]", "family", 2 + j,
                                       ext.g[size_t(j)], gclosed.coeff_q(2 + j)));
        out.push_back(compare_rational("g-plus-h[j=" + std::to_string(j) + "]", "family", 2 + j,
                                       ext.g_plus_h[size_t(j)], 0));
    }

    // F^{1_X}_1 at the abelian limit equals -<K,K> times the hook series
    out.push_back(compare_series("f1-onex-abelian", "family[K=e1]", f0A, gclosed.scaled(-kkA)));

    // <ch_1^L> at e_X = 0 against its closed form (extrapolated family)
    {
        std::vector<std::pair<Rational, ZQSeries>> fam;
        for (int r = 1; r <= qmax + 1; ++r) {
            SurfaceModel X = SurfaceModel::family_member(r, 1);
            FockSpace fs(X);
            ZQSeries s = series_ch(X, fs, {"L1"}, {1}, /*reduced=*/true, qmax);
            fam.push_back({Rational(X.chi()), s.coe_z0()});
        }
        out.push_back(compare_series("ch1-abelian-limit", "family[K=e1]", chi_extrapolate(fam, 0),
                                     closed_ch1(1, 1, qmax)));
    }

    // <ch_2^L>' on the K = 0 family against the abelian closed form
    {
        const int q2 = std::min(qmax, 4);
        std::vector<std::pair<Rational, ZQSeries>> fam;
        for (int r = 1; r <= q2 + 1; ++r) {
            SurfaceModel X = SurfaceModel::family_member(r, 0);
            FockSpace fs(X);
            ZQSeries s = series_ch(X, fs, {"L1"}, {2}, /*reduced=*/true, q2);
            fam.push_back({Rational(X.chi()), s.coe_z0()});
        }
        out.push_back(compare_series("ch2-abelian-limit", "family[K=0]", chi_extrapolate(fam, 0),
                                     closed_chk_abelian(1, 2, q2)));
    }
    return out;
}

}  // namespace suites

std::vector<std::string> suite_names() { return {"all", "fock", "identities", "constants", "abelian"}; }

std::vector<IdentityReport> run_suite(const std::string& suite, int qmax,
                                      const std::vector<SurfaceModel>& models) {
    std::vector<IdentityReport> out;
    auto append = [&](std::vector<IdentityReport> v) {
        out.insert(out.end(), std::make_move_iterator(v.begin()), std::make_move_iterator(v.end()));
    };
    std::vector<SurfaceModel> gmodels = models;
    if (gmodels.empty())
        for (const auto& nm : {"minimal", "two-class", "three-class"}) gmodels.push_back(SurfaceModel::preset(nm));
    std::vector<SurfaceModel> fmodels = models;
    if (fmodels.empty())
        for (const auto& nm : {"kpos", "two-class"}) fmodels.push_back(SurfaceModel::preset(nm));

    if (suite == "identities" || suite == "all") {
        append(suites::gottsche(qmax, gmodels));
        append(suites::f0(qmax, fmodels));
        append(suites::f1(qmax));
        append(suites::fk_point(qmax));
        append(suites::w_trace_closed(qmax));
        append(suites::theta_routes(qmax));
    }
    if (suite == "fock" || suite == "all") append(suites::fock_properties(50));
    if (suite == "constants" || suite == "all") {
        append(suites::constants_table(7, 6));
        append(suites::fqxk(qmax));
    }
    if (suite == "abelian" || suite == "all") append(suites::abelian(std::min(qmax, 5)));
    if (out.empty()) throw std::invalid_argument("run_suite: unknown suite '" + suite + "'");
    return out;
}

}  // namespace hilbq
