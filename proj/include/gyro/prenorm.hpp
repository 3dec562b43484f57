/*
   Copyright 2026 The gyrokit Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#ifndef GYRO_PRENORM_HPP
#define GYRO_PRENORM_HPP

#include <cstdint>
#include <vector>

#include "gyro/sets.hpp"

namespace gyro {

inline constexpr std::size_t default_dyadic_depth = 12;

/**
 * The sets V(m / 2^n) built from a neighborhood chain:
 *
 *   V(1) = U0,  V(1 / 2^n) = Un,  V(2m / 2^n) = V(m / 2^(n-1)),
 *   V((2m+1) / 2^n) = Un (+) V(m / 2^(n-1)),  V(m / 2^n) = G for m > 2^n.
 *
 * Finite chains give exact index sets. Ball chains stay balls, since the
 * sum of two centered closed balls is the centered ball of the Möbius sum
 * of their radii, so only radii are stored.
 */
class DyadicFamily {
public:
    /// Throws ChainInvalid when the chain or the assembled family fails its checks.
    static DyadicFamily build(const NeighborhoodChain& chain, std::size_t depth = default_dyadic_depth);

    std::size_t depth() const noexcept { return depth_; }
    const NeighborhoodChain& chain() const noexcept { return chain_; }
    bool is_exact() const noexcept { return exact_; }
    const CarrierPtr& carrier() const { return chain_.carrier(); }

    /// V(m / 2^n) for n <= depth and m >= 1.
    SetHandle set(std::uint64_t m, std::size_t n) const;
    /// Ball radius of V(m / 2^n); 1 stands for the whole disk. Ball chains only.
    double radius(std::uint64_t m, std::size_t n) const;

    /// Checks run while building (internal sum claim, monotonicity).
    std::size_t checks() const noexcept { return checks_; }

private:
    std::uint64_t finest(std::uint64_t m, std::size_t n) const;

    NeighborhoodChain chain_;
    std::size_t depth_ = 0;
    bool exact_ = true;
    /// Entry k is V((k+1) / 2^depth).
    std::vector<SetHandle> sets_;
    std::vector<double> radii_;
    std::size_t checks_ = 0;
};

struct PrenormOptions {
    /// Disk: grid points per axis over [-1, 1]^2 (points outside the disk are dropped).
    std::size_t grid = 200;
    /// Disk: seeded points whose moduli enter the supremum.
    std::size_t sup_samples = 1000;
    std::uint64_t seed = 0;
    Execution exec = Execution::parallel;
};

/**
 * Values of f(x) = inf{r : x in V(r)} and N(x) = sup_y |f(x (+) y) - f(y)|.
 *
 * f is the least depth-limited dyadic r with x in the right limit
 * V(r+) = intersection of V(s) over s > r; on a finite chain ending in P
 * this is P (+) V(r), with V(0) = {0}. It is exact whenever the true
 * infimum is a depth-limited dyadic and over-estimates by less than
 * 2^-depth otherwise.
 *
 * Finite carriers: N is the exact supremum over all y.
 *
 * Disk: f depends only on |x|. For |x| = r and each sampled modulus s, the
 * values |x (+) y| over the circle |y| = s fill the interval
 * [|s - r| / (1 - rs), (s + r) / (1 + rs)], so the supremum over that
 * circle is attained at an endpoint. The moduli used are 0, those of the
 * seeded samples, and both sides of every radius where f jumps. N is a
 * lower bound for the true supremum.
 */
class PrenormTable {
public:
    static PrenormTable build(DyadicFamily family, const PrenormOptions& opt = {});

    const DyadicFamily& family() const noexcept { return family_; }
    bool is_exact() const noexcept { return family_.is_exact(); }

    double f(const Element& x) const;
    double N(const Element& x) const;

    /// Finite: every element in index order. Disk: grid points, row-major from the bottom row.
    const std::vector<Element>& points() const noexcept { return points_; }
    const std::vector<double>& f_values() const noexcept { return f_; }
    const std::vector<double>& N_values() const noexcept { return N_; }
    std::size_t grid() const noexcept { return grid_; }

    /// f over-estimates the infimum by less than this.
    double f_error_bound() const;
    /// Disk only: N may under-estimate the supremum.
    bool N_is_lower_bound() const noexcept { return !is_exact(); }
    /// Moduli used for the disk supremum, ascending.
    const std::vector<double>& sup_moduli() const noexcept { return sup_; }
    /// Seeded sample points behind the disk supremum.
    const std::vector<Element>& sup_points() const noexcept { return sup_points_; }

    /// Disk: f as a function of the modulus.
    double f_radial(double t) const;
    /// Disk: N as a function of the modulus.
    double N_radial(double r) const;

private:
    DyadicFamily family_;
    std::vector<Element> points_;
    std::vector<double> f_, N_;
    std::vector<double> sup_, sup_f_;
    /// Disk: radius of V(k / 2^depth) at k - 1, capped at 1.
    std::vector<double> radii_;
    std::vector<Element> sup_points_;
    std::size_t grid_ = 0;
};

struct PrenormCheckOptions {
    /// Sampled pairs or triples per property on the disk.
    std::size_t budget = 10000;
    std::uint64_t seed = 0;
    /// Disk: tolerance for PN1-PN3; defaults to 2 / 2^depth.
    std::optional<double> tolerance;
    /// Disk: tolerance for gyration invariance.
    double gyr_tolerance = 1e-6;
    Execution exec = Execution::parallel;
};

namespace prenorm_prop {
inline constexpr const char* family = "dyadic_family";
inline constexpr const char* f_inside = "f_below_r_implies_member";
inline constexpr const char* pn1 = "PN1_zero";
inline constexpr const char* pn2 = "PN2_subadditive";
inline constexpr const char* pn3 = "PN3_symmetric";
inline constexpr const char* gyr_invariant = "gyration_invariant";
inline constexpr const char* sandwich_lower = "sandwich_lower";
inline constexpr const char* sandwich_upper = "sandwich_upper";
inline constexpr const char* sup_cross_check = "sup_pointwise_cross_check";
}  // namespace prenorm_prop

/**
 * Checks PN1 (N(0) = 0), PN2 (N(x (+) y) <= N(x) + N(y)), PN3
 * (N((-)x) = N(x)), gyration invariance and the sandwich
 * {N < 1/2^n} in Un in {N <= 2/2^n} for every n <= depth.
 *
 * Gyration invariance is skipped when the chain levels are not themselves
 * gyration invariant. Finite carriers are checked exhaustively and exactly.
 */
VerificationReport prenorm_check(const PrenormTable& tab, const PrenormCheckOptions& opt = {});

/// Builds the family and table from `chain`, then runs the checks above.
VerificationReport prenorm_check(const NeighborhoodChain& chain, std::size_t depth,
                                 const PrenormOptions& table = {}, const PrenormCheckOptions& opt = {});

/// |N(x) - N(y)|.
double pseudometric_d(const PrenormTable& tab, const Element& x, const Element& y);

/// N((-)x (+) y) + N((-)y (+) x). Throws ChainInvalid unless P is the chain's intersection.
double coset_metric(const Carrier& c, const SubgyroHandle& P, const PrenormTable& tab, const Element& x,
                    const Element& y);

namespace metric_prop {
inline constexpr const char* representative = "representative_independence";
inline constexpr const char* coset_invariance = "coset_invariance";
inline constexpr const char* indiscernibles = "identity_of_indiscernibles";
inline constexpr const char* symmetry = "symmetry";
inline constexpr const char* triangle = "triangle_inequality";
}  // namespace metric_prop

struct MetricCheckOptions {
    std::size_t budget = 10000;
    std::uint64_t seed = 0;
    /// Disk: defaults to 2 * (2 / 2^depth).
    std::optional<double> tolerance;
    Execution exec = Execution::parallel;
};

/// Exhaustive on finite carriers; sampled triples of grid points on the disk.
VerificationReport metric_check(const Carrier& c, const SubgyroHandle& P, const PrenormTable& tab,
                                const MetricCheckOptions& opt = {});

}  // namespace gyro

#endif  // GYRO_PRENORM_HPP
