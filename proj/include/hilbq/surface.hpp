#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <tuple>
#include <vector>

#include "hilbq/rational.hpp"

namespace hilbq {

struct ModelError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A cohomology class on the model surface, stored by graded pieces:
// c0 * 1_X  +  sum_a c2[a] * e_a  +  c4 * x.
struct CohClass {
    Rational c0;
    std::vector<Rational> c2;
    Rational c4;

    bool is_zero() const;
    // Degree of a homogeneous class (0, 2 or 4); throws if mixed or zero.
    int degree() const;
    bool operator==(const CohClass& o) const { return c0 == o.c0 && c2 == o.c2 && c4 == o.c4; }
};

CohClass operator+(const CohClass& a, const CohClass& b);
CohClass operator-(const CohClass& a, const CohClass& b);
CohClass operator*(const Rational& c, const CohClass& a);

// Formal model of the even cohomology ring of a smooth projective surface:
// basis 1_X, e_1..e_r (degree 2), x (degree 4, the point class), with a
// symmetric invertible pairing matrix P on the degree-2 part. The total even
// Betti number chi = r + 2 plays the role of the Euler characteristic, and
// the Euler class is e_X = chi * x. Immutable after construction.
class SurfaceModel {
public:
    SurfaceModel(std::vector<std::vector<Rational>> pairing,
                 std::vector<Rational> canonical_k,
                 std::map<std::string, std::vector<Rational>> line_bundles,
                 std::string name = "custom");

    const std::string& name() const { return name_; }
    int r() const { return r_; }
    int chi() const { return r_ + 2; }
    // Linear basis of H*(X): index 0 is 1_X, 1..r are e_a, r+1 is x.
    int basis_size() const { return r_ + 2; }
    int basis_degree(int idx) const;
    CohClass basis_class(int idx) const;

    CohClass zero_class() const { return CohClass{0, std::vector<Rational>(r_, 0), 0}; }
    CohClass one() const;
    CohClass point() const;
    CohClass euler_class() const;  // chi * x
    CohClass canonical() const;    // K_X
    CohClass line_bundle(const std::string& name) const;
    const std::map<std::string, std::vector<Rational>>& line_bundles() const { return line_bundles_; }

    CohClass cup(const CohClass& a, const CohClass& b) const;
    Rational pair(const CohClass& a, const CohClass& b) const;

    // (1_X - K_X)^m as a class; powers beyond degree 4 vanish.
    CohClass one_minus_k_pow(int m) const;

    // Expands a class into basis coefficients (index, coefficient).
    std::vector<std::pair<int, Rational>> decompose(const CohClass& a) const;

    // Kunneth expansion of the pushforward of alpha along the length-ell
    // diagonal, with every tensor slot resolved into basis indices. Cached
    // per (ell, alpha); the reference stays valid for the model's lifetime.
    const std::vector<std::pair<Rational, std::vector<int>>>& diagonal_basis(int ell, const CohClass& alpha) const;
    // Same, with slots as classes (convenience for tests).
    std::vector<std::pair<Rational, std::vector<CohClass>>> diagonal(int ell, const CohClass& alpha) const;

    const std::vector<std::vector<Rational>>& pairing_matrix() const { return P_; }
    const std::vector<std::vector<Rational>>& pairing_inverse() const { return Pinv_; }

    // Gram matrix of the full basis {1_X, e_a, x} under pair().
    std::vector<std::vector<Rational>> full_pairing() const;

    static SurfaceModel preset(const std::string& name);
    static std::vector<std::string> preset_names();
    // Family member used for extrapolation in the Euler characteristic:
    // P = identity of size rr, K = kscale * e_1, L1 = e_1.
    static SurfaceModel family_member(int rr, const Rational& kscale);

    static SurfaceModel from_json_text(const std::string& text);
    static SurfaceModel load(const std::string& path_or_preset);
    std::string to_json_text() const;

private:
    std::string name_;
    int r_;
    std::vector<std::vector<Rational>> P_;
    std::vector<std::vector<Rational>> Pinv_;
    std::vector<Rational> K_;
    std::map<std::string, std::vector<Rational>> line_bundles_;

    std::vector<std::pair<Rational, std::vector<int>>> compute_diagonal_basis(int ell, const CohClass& alpha) const;
    struct DiagCache;  // mutex-guarded memo, shared across copies of the model
    std::shared_ptr<DiagCache> diag_cache_;
};

// Exact inverse of a square rational matrix; throws ModelError if singular.
std::vector<std::vector<Rational>> invert_matrix(std::vector<std::vector<Rational>> m);

}  // namespace hilbq
