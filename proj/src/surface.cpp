#include "hilbq/surface.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace hilbq {

bool CohClass::is_zero() const {
    if (c0 != 0 || c4 != 0) return false;
    for (const auto& c : c2)
        if (c != 0) return false;
    return true;
}

int CohClass::degree() const {
    bool d0 = c0 != 0, d4 = c4 != 0, d2 = false;
    for (const auto& c : c2)
        if (c != 0) d2 = true;
    if (int(d0) + int(d2) + int(d4) != 1) throw ModelError("degree: class is zero or mixed");
    return d0 ? 0 : (d2 ? 2 : 4);
}

CohClass operator+(const CohClass& a, const CohClass& b) {
    if (a.c2.size() != b.c2.size()) throw ModelError("CohClass: model mismatch");
    CohClass r = a;
    r.c0 += b.c0;
    r.c4 += b.c4;
    for (size_t i = 0; i < r.c2.size(); ++i) r.c2[i] += b.c2[i];
    return r;
}

CohClass operator-(const CohClass& a, const CohClass& b) { return a + (Rational(-1) * b); }

CohClass operator*(const Rational& c, const CohClass& a) {
    CohClass r = a;
    r.c0 *= c;
    r.c4 *= c;
    for (auto& v : r.c2) v *= c;
    return r;
}

std::vector<std::vector<Rational>> invert_matrix(std::vector<std::vector<Rational>> m) {
    const size_t n = m.size();
    std::vector<std::vector<Rational>> inv(n, std::vector<Rational>(n, 0));
    for (size_t i = 0; i < n; ++i) inv[i][i] = 1;
    for (size_t col = 0; col < n; ++col) {
        size_t piv = col;
        while (piv < n && m[piv][col] == 0) ++piv;
        if (piv == n) throw ModelError("invert_matrix: singular matrix");
        std::swap(m[piv], m[col]);
        std::swap(inv[piv], inv[col]);
        Rational d = m[col][col];
        for (size_t j = 0; j < n; ++j) {
            m[col][j] /= d;
            inv[col][j] /= d;
        }
        for (size_t row = 0; row < n; ++row) {
            if (row == col || m[row][col] == 0) continue;
            Rational f = m[row][col];
            for (size_t j = 0; j < n; ++j) {
                m[row][j] -= f * m[col][j];
                inv[row][j] -= f * inv[col][j];
            }
        }
    }
    return inv;
}

struct SurfaceModel::DiagCache {
    using Key = std::tuple<int, Rational, std::vector<Rational>, Rational>;
    std::mutex mu;
    std::map<Key, std::shared_ptr<const std::vector<std::pair<Rational, std::vector<int>>>>> cells;
};

SurfaceModel::SurfaceModel(std::vector<std::vector<Rational>> pairing,
                           std::vector<Rational> canonical_k,
                           std::map<std::string, std::vector<Rational>> line_bundles,
                           std::string name)
    : name_(std::move(name)),
      r_(int(pairing.size())),
      P_(std::move(pairing)),
      K_(std::move(canonical_k)),
      line_bundles_(std::move(line_bundles)),
      diag_cache_(std::make_shared<DiagCache>()) {
    for (const auto& row : P_)
        if (int(row.size()) != r_) throw ModelError("SurfaceModel: P is not square");
    for (int i = 0; i < r_; ++i)
        for (int j = 0; j < i; ++j)
            if (P_[i][j] != P_[j][i]) throw ModelError("SurfaceModel: P is not symmetric");
    if (int(K_.size()) != r_) throw ModelError("SurfaceModel: K has wrong dimension");
    for (const auto& [nm, v] : line_bundles_)
        if (int(v.size()) != r_) throw ModelError("SurfaceModel: line bundle '" + nm + "' has wrong dimension");
    Pinv_ = invert_matrix(P_);  // enforces Poincare duality on H^2
}

int SurfaceModel::basis_degree(int idx) const {
    if (idx == 0) return 0;
    if (idx == r_ + 1) return 4;
    if (idx >= 1 && idx <= r_) return 2;
    throw ModelError("basis_degree: index out of range");
}

CohClass SurfaceModel::basis_class(int idx) const {
    CohClass c = zero_class();
    if (idx == 0)
        c.c0 = 1;
    else if (idx == r_ + 1)
        c.c4 = 1;
    else if (idx >= 1 && idx <= r_)
        c.c2[idx - 1] = 1;
    else
        throw ModelError("basis_class: index out of range");
    return c;
}

CohClass SurfaceModel::one() const { return basis_class(0); }
CohClass SurfaceModel::point() const { return basis_class(r_ + 1); }
CohClass SurfaceModel::euler_class() const { return Rational(chi()) * point(); }

CohClass SurfaceModel::canonical() const {
    CohClass c = zero_class();
    c.c2 = K_;
    return c;
}

CohClass SurfaceModel::line_bundle(const std::string& name) const {
    auto it = line_bundles_.find(name);
    if (it == line_bundles_.end()) throw ModelError("line_bundle: unknown name '" + name + "'");
    CohClass c = zero_class();
    c.c2 = it->second;
    return c;
}

CohClass SurfaceModel::cup(const CohClass& a, const CohClass& b) const {
    if (int(a.c2.size()) != r_ || int(b.c2.size()) != r_) throw ModelError("cup: model mismatch");
    CohClass r = zero_class();
    r.c0 = a.c0 * b.c0;
    for (int i = 0; i < r_; ++i) r.c2[i] = a.c0 * b.c2[i] + b.c0 * a.c2[i];
    Rational mid = 0;
    for (int i = 0; i < r_; ++i)
        for (int j = 0; j < r_; ++j) mid += a.c2[i] * P_[i][j] * b.c2[j];
    r.c4 = a.c0 * b.c4 + b.c0 * a.c4 + mid;
    return r;  // total degree > 4 vanishes
}

Rational SurfaceModel::pair(const CohClass& a, const CohClass& b) const { return cup(a, b).c4; }

CohClass SurfaceModel::one_minus_k_pow(int m) const {
    // (1 - K)^m = 1 - m K + C(m,2) K^2, higher powers of K vanish.
    CohClass k = canonical();
    CohClass r = one() - (Rational(m) * k);
    r = r + Rational(binom(unsigned(m), 2)) * cup(k, k);
    return r;
}

std::vector<std::pair<int, Rational>> SurfaceModel::decompose(const CohClass& a) const {
    std::vector<std::pair<int, Rational>> out;
    if (a.c0 != 0) out.emplace_back(0, a.c0);
    for (int i = 0; i < r_; ++i)
        if (a.c2[i] != 0) out.emplace_back(i + 1, a.c2[i]);
    if (a.c4 != 0) out.emplace_back(r_ + 1, a.c4);
    return out;
}

const std::vector<std::pair<Rational, std::vector<int>>>& SurfaceModel::diagonal_basis(int ell, const CohClass& alpha) const {
    DiagCache::Key key{ell, alpha.c0, alpha.c2, alpha.c4};
    {
        std::lock_guard<std::mutex> lk(diag_cache_->mu);
        auto it = diag_cache_->cells.find(key);
        if (it != diag_cache_->cells.end()) return *it->second;
    }
    auto fresh = std::make_shared<const std::vector<std::pair<Rational, std::vector<int>>>>(
        compute_diagonal_basis(ell, alpha));
    std::lock_guard<std::mutex> lk(diag_cache_->mu);
    auto [it, ignored] = diag_cache_->cells.emplace(std::move(key), std::move(fresh));
    return *it->second;
}

std::vector<std::pair<Rational, std::vector<int>>> SurfaceModel::compute_diagonal_basis(int ell, const CohClass& alpha) const {
    if (ell < 1) throw ModelError("diagonal_basis: ell must be >= 1");
    using Term = std::pair<Rational, std::vector<int>>;
    std::map<std::vector<int>, Rational> acc;
    if (ell == 1) {
        for (auto& [idx, c] : decompose(alpha)) acc[{idx}] += c;
    } else if (ell == 2) {
        // tau_{2*}(alpha) = tau_{2*}(1_X) . (alpha x 1), with
        // tau_{2*}(1_X) = 1 x x + x x 1 + sum (P^{-1})_{ab} e_a x e_b.
        auto emit = [&](const CohClass& left, int rightIdx, const Rational& w) {
            for (auto& [b, cb] : decompose(cup(left, alpha)))
                if (w * cb != 0) acc[{b, rightIdx}] += w * cb;
        };
        emit(one(), r_ + 1, 1);
        emit(point(), 0, 1);
        for (int a = 0; a < r_; ++a)
            for (int b = 0; b < r_; ++b)
                if (Pinv_[a][b] != 0) emit(basis_class(a + 1), b + 1, Pinv_[a][b]);
    } else {
        // tau_ell = (tau_{ell-1} x 1) o tau_2
        for (auto& [c2, pairIdx] : diagonal_basis(2, alpha)) {
            auto rest = diagonal_basis(ell - 1, basis_class(pairIdx[0]));
            for (auto& [cr, tup] : rest) {
                std::vector<int> full = tup;
                full.push_back(pairIdx[1]);
                acc[std::move(full)] += c2 * cr;
            }
        }
    }
    std::vector<Term> out;
    for (auto& [tup, c] : acc)
        if (c != 0) out.emplace_back(c, tup);
    return out;
}

std::vector<std::pair<Rational, std::vector<CohClass>>> SurfaceModel::diagonal(int ell, const CohClass& alpha) const {
    std::vector<std::pair<Rational, std::vector<CohClass>>> out;
    for (auto& [c, tup] : diagonal_basis(ell, alpha)) {
        std::vector<CohClass> cls;
        cls.reserve(tup.size());
        for (int idx : tup) cls.push_back(basis_class(idx));
        out.emplace_back(c, std::move(cls));
    }
    return out;
}

std::vector<std::vector<Rational>> SurfaceModel::full_pairing() const {
    int n = basis_size();
    std::vector<std::vector<Rational>> g(n, std::vector<Rational>(n, 0));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) g[i][j] = pair(basis_class(i), basis_class(j));
    return g;
}

SurfaceModel SurfaceModel::preset(const std::string& name) {
    auto vec = [](std::initializer_list<long> xs) {
        std::vector<Rational> v;
        for (long x : xs) v.emplace_back(x);
        return v;
    };
    if (name == "minimal") {
        return SurfaceModel({{Rational(1)}}, vec({0}), {{"L1", vec({1})}}, name);
    }
    if (name == "two-class") {
        return SurfaceModel({{Rational(1), Rational(0)}, {Rational(0), Rational(-1)}},
                            vec({0, 0}), {{"L1", vec({1, 0})}, {"L2", vec({0, 1})}}, name);
    }
    if (name == "three-class") {
        std::vector<std::vector<Rational>> p(3, std::vector<Rational>(3, 0));
        for (int i = 0; i < 3; ++i) p[i][i] = 1;
        return SurfaceModel(p, vec({0, 0, 0}), {{"L1", vec({1, 0, 0})}}, name);
    }
    if (name == "kpos") {
        return SurfaceModel({{Rational(1)}}, vec({1}), {{"L1", vec({1})}}, name);
    }
    if (name == "kpos2") {
        return SurfaceModel({{Rational(1)}}, vec({2}), {{"L1", vec({1})}}, name);
    }
    throw ModelError("preset: unknown preset '" + name + "'");
}

std::vector<std::string> SurfaceModel::preset_names() {
    return {"minimal", "two-class", "three-class", "kpos", "kpos2"};
}

SurfaceModel SurfaceModel::family_member(int rr, const Rational& kscale) {
    std::vector<std::vector<Rational>> p(rr, std::vector<Rational>(rr, 0));
    for (int i = 0; i < rr; ++i) p[i][i] = 1;
    std::vector<Rational> k(rr, 0), l(rr, 0);
    k[0] = kscale;
    l[0] = 1;
    std::ostringstream nm;
    nm << "family-r" << rr;
    return SurfaceModel(p, k, {{"L1", l}}, nm.str());
}

static std::vector<Rational> parse_vec(const nlohmann::json& j) {
    std::vector<Rational> v;
    for (const auto& e : j) {
        if (e.is_number_integer())
            v.emplace_back(e.get<long>());
        else
            v.push_back(rat_parse(e.get<std::string>()));
    }
    return v;
}

SurfaceModel SurfaceModel::from_json_text(const std::string& text) {
    auto j = nlohmann::json::parse(text);
    int r = j.at("r").get<int>();
    auto flat = parse_vec(j.at("P"));
    if (int(flat.size()) != r * r) throw ModelError("model json: P must have r*r entries (row-major)");
    std::vector<std::vector<Rational>> P(r, std::vector<Rational>(r));
    for (int i = 0; i < r; ++i)
        for (int k = 0; k < r; ++k) P[i][k] = flat[i * r + k];
    std::vector<Rational> K(r, 0);
    if (j.contains("K")) {
        K = parse_vec(j.at("K"));
        if (int(K.size()) != r) throw ModelError("model json: K must have r entries");
    }
    std::map<std::string, std::vector<Rational>> lbs;
    if (j.contains("lineBundles"))
        for (auto it = j.at("lineBundles").begin(); it != j.at("lineBundles").end(); ++it)
            lbs[it.key()] = parse_vec(it.value());
    std::string name = j.value("name", std::string("custom"));
    return SurfaceModel(std::move(P), std::move(K), std::move(lbs), name);
}

SurfaceModel SurfaceModel::load(const std::string& path_or_preset) {
    for (const auto& p : preset_names())
        if (p == path_or_preset) return preset(p);
    std::ifstream in(path_or_preset);
    if (!in) throw ModelError("load: cannot open model file '" + path_or_preset + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return from_json_text(ss.str());
}

std::string SurfaceModel::to_json_text() const {
    nlohmann::ordered_json j;
    j["name"] = name_;
    j["r"] = r_;
    nlohmann::ordered_json p = nlohmann::ordered_json::array();
    for (const auto& row : P_)
        for (const auto& e : row) p.push_back(rat_str(e));
    j["P"] = std::move(p);
    nlohmann::ordered_json k = nlohmann::ordered_json::array();
    for (const auto& e : K_) k.push_back(rat_str(e));
    j["K"] = std::move(k);
    nlohmann::ordered_json lbs;
    for (const auto& [nm, v] : line_bundles_) {
        nlohmann::ordered_json lv = nlohmann::ordered_json::array();
        for (const auto& e : v) lv.push_back(rat_str(e));
        lbs[nm] = std::move(lv);
    }
    j["lineBundles"] = std::move(lbs);
    return j.dump(2);
}

}  // namespace hilbq
