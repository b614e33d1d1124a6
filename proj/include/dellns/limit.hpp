#pragma once

// The stable-limit construction on symmetric functions: the extended ring
// Lambda[v] with its head/tail decomposition, the shift and chain
// operators gamma/W/Z and their blocks alpha/beta/X/Y, the collapse
// operator V into Lambda[w], the generating series J(u), K(u), I(u) and
// the normalized series, the explicit low-order Hamiltonians, and the
// verification suites tying all of it to the finite-variable model.
//
// Every operator here preserves the total grading (v-degree plus
// symmetric-function weight), so operators are also realized as finite
// matrices on the graded blocks; series arithmetic then happens over
// those matrices.

#include <cstddef>
#include <functional>
#include <utility>
#include <vector>

#include "dellns/report.hpp"
#include "dellns/series.hpp"
#include "dellns/symfunc.hpp"
#include "dellns/xpoly.hpp"

namespace dellns {

// finitely supported element of Lambda[v]: v-degree -> symmetric function
class VElement {
public:
    using Parts = std::map<int, SymFunc>;

    VElement() = default;
    // embed a symmetric function at the given v-degree
    VElement(int vdeg, const SymFunc& f) { add(vdeg, f); }

    const Parts& parts() const { return parts_; }
    bool is_zero() const { return parts_.empty(); }
    SymFunc coeff(int vdeg) const;
    SymFunc head() const { return coeff(0); }
    // the v^(>=1) part
    VElement tail() const;

    void add(int vdeg, const SymFunc& f);

    VElement operator-() const;
    VElement operator+(const VElement& o) const;
    VElement operator-(const VElement& o) const;
    VElement& operator+=(const VElement& o) { return *this = *this + o; }
    bool operator==(const VElement& o) const { return parts_ == o.parts_; }
    bool operator!=(const VElement& o) const { return !(*this == o); }

    VElement scaled(const ParamScalar& c) const;

    std::string str() const;

private:
    Parts parts_;
};

// v -> q^{-n} v then multiplication by the perp-vertex series: the limit
// of the shift operator; acts on p_k as p_k + q^{-k}v^k - v^k and on v as
// q^{-n}v
VElement gamma_limit(int n, const VElement& f);
// v-degree lowering through the vertex series, then v -> t^n v
VElement w_limit(int n, const VElement& f);
VElement z_limit(int n, const VElement& f);

// blocks with respect to Lambda[v] = Lambda (+) v Lambda[v], transcribed
// from their matrix elements (alpha and beta act through the perp family,
// X and Y through the multiplication family); alpha, X, Y read the tail
// part of the argument, beta reads a head
VElement alpha_limit(int n, const VElement& f);
VElement beta_limit(int n, const SymFunc& f);
VElement x_limit(int n, const VElement& f);
SymFunc y_limit(int n, const VElement& f);

// collapse Lambda[v] -> Lambda[w]: head f -> (w^n - 1) f, tail
// v^m f -> -Q_m^{[n]} f; the w-power lives in the coefficients
SymFunc v_limit(int n, const VElement& f);

// evaluation homomorphisms: v -> x_1, p_k -> power sums
XPoly pi_n1(const VElement& f, std::size_t N);

// basis of the total-grading block: (v-degree m, partition of g - m),
// head entries (m = 0) first
std::vector<std::pair<int, Partition>> graded_basis(int grading);
// number of head entries (= number of partitions of the grading)
int head_dim(int grading);

// dense matrix on one graded block, in graded_basis order
struct GradedMat {
    int dim = 0;
    std::vector<ParamScalar> a;  // row-major

    static GradedMat zero(int d);
    static GradedMat identity(int d);

    const ParamScalar& at(int i, int j) const { return a[std::size_t(i) * dim + j]; }
    ParamScalar& at(int i, int j) { return a[std::size_t(i) * dim + j]; }

    bool is_zero() const;
    GradedMat operator-() const;
    GradedMat operator+(const GradedMat& o) const;
    GradedMat operator-(const GradedMat& o) const { return *this + (-o); }
    GradedMat operator*(const GradedMat& o) const;
    GradedMat& operator+=(const GradedMat& o) { return *this = *this + o; }
    bool operator==(const GradedMat& o) const;
    bool operator!=(const GradedMat& o) const { return !(*this == o); }
    GradedMat scaled(const ParamScalar& c) const;
};

// matrix of a grading-preserving operator on the given block
GradedMat op_matrix(int grading, const std::function<VElement(const VElement&)>& op);
// apply the head block of a matrix to a pure-weight symmetric function
SymFunc apply_head(const GradedMat& m, int weight, const SymFunc& f);
// expand a graded element in the block basis / rebuild it
std::vector<ParamScalar> graded_coords(int grading, const VElement& f);
VElement graded_build(int grading, const std::vector<ParamScalar>& coords);

// u-coefficients of the generating series on one weight block:
// J(u) = Y^{[1]} (1 - u a^{[1]}X^{[1]})^{-1} b^{[1]}, n >= 0
GradedMat j_n_matrix(int n, int weight);
// K(u) assembled from its five summands (u-degrees >= -1)
GradedMat k_n_matrix(int n, int weight);
// independent multi-sum forms of K_{-1}, K_0, K_1 through the mode
// expansions (constant-term extraction); n in {-1, 0, 1}
GradedMat k_n_sum_matrix(int n, int weight);

// the normalized generating series on one weight block, exact on [lo, hi]
OmegaUSeries<GradedMat> mathcal_i_series(int weight, int omega_order, int lo, int hi);

// verification suites
Report verify_diagrams(int n_max, int degree, std::size_t N);
Report verify_stability(std::size_t N, int omega_order, int degree, int lo, int hi);
Report verify_w_independence(int omega_order, int lo, int hi, int degree);
Report verify_commutativity(int degree, int omega_order);
Report verify_eigen_omega0(int max_weight, int lo, int hi);
Report verify_k_dual(int degree);

}  // namespace dellns
