// SPDX-License-Identifier: Apache-2.0
//
// Copyright 2026 The uavee Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef UAVEE_DETAIL_SCA_ENGINE_HPP
#define UAVEE_DETAIL_SCA_ENGINE_HPP

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include <Eigen/Dense>

#include "uavee/ma.hpp"
#include "uavee/rng.hpp"

namespace uavee::detail {

// Weighted sum rate of every scheme written as
//     sum_g weight_g * min_{t in g} log2(1 + SINR_t(W)),
// where SINR_t = |g_u^H w_s|^2 / (N0 + sum_{l in I} |g_u^H w_l|^2) for the
// effective channel g_u = sqrt(G_u) h_u of the receiving UAV u.
//   RSMA: one single-term group per private stream, plus the common group
//         (weight max_k beta_k, one term per UAV) on column K.
//   SDMA: private groups only.
//   NOMA: one group per message, one term per decoder along the SIC chain.
struct RateTerm {
    int user = 0;
    int signal = 0;
    std::vector<int> interferers;
};

struct RateGroup {
    double weight = 1.0;
    std::vector<RateTerm> terms;
};

struct RateProgram {
    int num_columns = 0;
    int common_column = -1;
    int common_group = -1;
    std::vector<RateGroup> groups;
};

inline RateProgram build_program(Scheme scheme, const LinkBudget& lb) {
    const int k_users = lb.num_users();
    RateProgram prog;
    prog.num_columns = k_users + (scheme == Scheme::rsma ? 1 : 0);

    if (scheme == Scheme::noma) {
        const std::vector<int> order = lb.noma_order.empty() ? default_noma_order(lb.channels) : lb.noma_order;
        for (int m = 0; m < k_users; ++m) {
            RateGroup g;
            g.weight = lb.weights[order[m]];
            std::vector<int> weaker(order.begin(), order.begin() + m);
            for (int j = 0; j <= m; ++j)
                g.terms.push_back({order[j], order[m], weaker});
            prog.groups.push_back(std::move(g));
        }
        return prog;
    }

    for (int k = 0; k < k_users; ++k) {
        RateGroup g;
        g.weight = lb.weights[k];
        RateTerm t{k, k, {}};
        for (int l = 0; l < k_users; ++l)
            if (l != k)
                t.interferers.push_back(l);
        g.terms.push_back(std::move(t));
        prog.groups.push_back(std::move(g));
    }
    if (scheme == Scheme::rsma) {
        RateGroup g;
        g.weight = *std::max_element(lb.weights.begin(), lb.weights.end());
        std::vector<int> all_private(k_users);
        for (int l = 0; l < k_users; ++l)
            all_private[l] = l;
        for (int k = 0; k < k_users; ++k)
            g.terms.push_back({k, k_users, all_private});
        prog.common_column = k_users;
        prog.common_group = static_cast<int>(prog.groups.size());
        prog.groups.push_back(std::move(g));
    }
    return prog;
}

// First-order minorizer of log(1 + |x|^2 / y) around (x0, y0):
//     log(1+g0) - g0 + 2 Re(conj(x0) x) / y0 - g0 (|x|^2 + y) / (|x0|^2 + y0),   g0 = |x0|^2 / y0.
// Jointly concave in (x, y), tight with matching gradient at (x0, y0). With
// x linear and y convex quadratic in W it is a concave quadratic in W.
struct TermBound {
    cplx x0{0.0, 0.0};
    double y0 = 1.0;
    double constant = 0.0; // bits
    double quad = 0.0;     // bits, multiplies |g^H w_l|^2 for l in I and s
    cplx lin{0.0, 0.0};    // bits, multiplies 2 Re(conj(lin) g^H w_s)
};

class ScaEngine {
public:
    ScaEngine(Scheme scheme, const LinkBudget& lb)
        : scheme_(scheme), noise_(lb.noise_power), budget_(lb.power_budget), static_power_(lb.bs_static_power),
          weights_(lb.weights), prog_(build_program(scheme, lb)) {
        const int m = lb.num_antennas();
        const int k_users = lb.num_users();
        CMatrix g(m, k_users);
        for (int k = 0; k < k_users; ++k)
            g.col(k) = lb.channels[k].effective();

        // Every rate depends on W only through G^H W, so the optimum lies in
        // span(G). Work in an orthonormal basis of that span.
        Eigen::JacobiSVD<CMatrix> svd(g, Eigen::ComputeThinU);
        const RVector& s = svd.singularValues();
        int rank = 0;
        const double smax = s.size() > 0 ? s[0] : 0.0;
        for (Eigen::Index i = 0; i < s.size(); ++i)
            if (s[i] > smax * 1e-12 && s[i] > 0.0)
                ++rank;
        basis_ = svd.matrixU().leftCols(rank);
        reduced_ = basis_.adjoint() * g;
    }

    [[nodiscard]] Scheme scheme() const noexcept { return scheme_; }
    [[nodiscard]] int rank() const noexcept { return static_cast<int>(basis_.cols()); }
    [[nodiscard]] int columns() const noexcept { return prog_.num_columns; }
    [[nodiscard]] const RateProgram& program() const noexcept { return prog_; }
    [[nodiscard]] double power_budget() const noexcept { return budget_; }

    /// Full-space precoders -> reduced coordinates. Dropping the component
    /// outside span(G) keeps every rate and never increases the power.
    [[nodiscard]] CMatrix project(const PrecoderSolution& sol) const {
        CMatrix full(sol.num_antennas(), prog_.num_columns);
        full.leftCols(sol.num_users()) = sol.private_precoders;
        if (prog_.common_column >= 0)
            full.col(prog_.common_column) = sol.common_precoder;
        return basis_.adjoint() * full;
    }

    /// Reduced coordinates -> full-space solution with the optimal common-rate split.
    [[nodiscard]] PrecoderSolution lift(const CMatrix& w) const {
        const int k_users = static_cast<int>(weights_.size());
        PrecoderSolution sol = PrecoderSolution::zeros(scheme_, static_cast<int>(basis_.rows()), k_users);
        if (w.size() == 0 || rank() == 0)
            return sol;
        const CMatrix full = basis_ * w;
        sol.private_precoders = full.leftCols(k_users);
        if (prog_.common_column >= 0) {
            sol.common_precoder = full.col(prog_.common_column);
            sol.common_rates = allocate_common_rate(common_rate_cap(w), weights_);
        }
        return sol;
    }

    /// min_k R^c_k for the common column (0 when the scheme has none).
    [[nodiscard]] double common_rate_cap(const CMatrix& w) const {
        if (prog_.common_group < 0)
            return 0.0;
        const Eigen::MatrixXd rx = received(w);
        double cap = std::numeric_limits<double>::infinity();
        for (const auto& t : prog_.groups[prog_.common_group].terms)
            cap = std::min(cap, term_rate(rx, t));
        return cap;
    }

    [[nodiscard]] double weighted_rate(const CMatrix& w) const {
        if (rank() == 0)
            return 0.0;
        const Eigen::MatrixXd rx = received(w);
        double total = 0.0;
        for (const auto& g : prog_.groups) {
            double worst = std::numeric_limits<double>::infinity();
            for (const auto& t : g.terms)
                worst = std::min(worst, term_rate(rx, t));
            total += g.weight * worst;
        }
        return total;
    }

    [[nodiscard]] double energy_efficiency(const CMatrix& w) const {
        const double denom = w.squaredNorm() + static_power_;
        return denom > 0.0 ? weighted_rate(w) / denom : 0.0;
    }

    /// Deterministic start: matched filters with equal power split (RSMA puts
    /// half of P_t on the dominant eigenvector of sum_k g_k g_k^H for the
    /// common stream). Restarts > 0 add complex Gaussian noise of the given
    /// relative size per column. common_off starts RSMA from the SDMA point.
    [[nodiscard]] CMatrix initial_point(int restart, std::uint64_t seed, double perturbation, bool common_off) const {
        const int r = rank();
        const int k_users = static_cast<int>(weights_.size());
        CMatrix w = CMatrix::Zero(r, prog_.num_columns);
        if (r == 0 || budget_ <= 0.0)
            return w;
        const bool with_common = prog_.common_column >= 0 && !common_off;
        const double private_power = with_common ? 0.5 * budget_ / k_users : budget_ / k_users;
        for (int k = 0; k < k_users; ++k) {
            const double n = reduced_.col(k).norm();
            if (n > 0.0)
                w.col(k) = reduced_.col(k) * (std::sqrt(private_power) / n);
        }
        if (with_common) {
            Eigen::SelfAdjointEigenSolver<CMatrix> eig(reduced_ * reduced_.adjoint());
            w.col(prog_.common_column) = eig.eigenvectors().col(r - 1) * std::sqrt(0.5 * budget_);
        }
        if (restart > 0 && perturbation > 0.0) {
            auto rng = CounterRng::substream(seed, static_cast<std::uint64_t>(restart));
            for (int l = 0; l < prog_.num_columns; ++l) {
                CVector noise(r);
                for (int i = 0; i < r; ++i)
                    noise[i] = rng.complex_normal();
                const double wn = w.col(l).norm();
                const double nn = noise.norm();
                if (wn > 0.0 && nn > 0.0)
                    w.col(l) += noise * (perturbation * wn / nn);
            }
            const double p = w.squaredNorm();
            if (p > budget_)
                w *= std::sqrt(budget_ / p);
        }
        return w;
    }

    struct Step {
        CMatrix w;
        double objective = 0.0;
        bool improved = false;
        bool numerical_failure = false;
    };

    /// One SCA step from a feasible point: every rate term is replaced by its
    /// concave minorizer at w0 and the ratio by the Dinkelbach form
    /// N(W) - lambda (tr(WW^H) + P_BS) with lambda = EE(w0). The maximizer of
    /// that concave program has EE >= EE(w0). If rounding breaks that, the
    /// move towards the maximizer is shortened; if no shortened move helps,
    /// w0 is returned unchanged.
    [[nodiscard]] Step step(const CMatrix& w0, double trust, double inner_tol) const {
        Step out{w0, energy_efficiency(w0), false, false};
        if (rank() == 0 || budget_ <= 0.0)
            return out;
        const double lambda = out.objective;
        const auto bounds = linearize(w0);

        std::vector<CMatrix> candidates;
        std::vector<bool> active(prog_.groups.size(), true);
        candidates.push_back(solve_dual(bounds, active, lambda, inner_tol));
        if (prog_.common_group >= 0) {
            // Common stream switched off entirely.
            active[prog_.common_group] = false;
            candidates.push_back(solve_dual(bounds, active, lambda, inner_tol));
        }

        const CMatrix* best = nullptr;
        double best_obj = -std::numeric_limits<double>::infinity();
        for (const auto& c : candidates) {
            if (!c.allFinite()) {
                out.numerical_failure = true;
                continue;
            }
            const double obj = energy_efficiency(c);
            if (obj > best_obj) {
                best_obj = obj;
                best = &c;
            }
        }
        if (best == nullptr)
            return out;

        double rho = std::clamp(trust, 0.0, 1.0);
        if (rho >= 1.0) {
            if (best_obj >= out.objective) {
                out.w = *best;
                out.objective = best_obj;
                out.improved = best_obj > lambda;
                return out;
            }
            rho = 0.5;
        }
        // Shortened moves along the segment stay feasible (convex power set)
        // and the surrogate is concave along it.
        for (int attempt = 0; attempt < 30 && rho > 0.0; ++attempt, rho *= 0.5) {
            const CMatrix trial = w0 + rho * (*best - w0);
            const double obj = energy_efficiency(trial);
            if (obj >= out.objective) {
                out.w = trial;
                out.objective = obj;
                out.improved = obj > lambda;
                return out;
            }
        }
        return out;
    }

private:
    // rx(k, l) = |g_k^H w_l|^2 in reduced coordinates.
    [[nodiscard]] Eigen::MatrixXd received(const CMatrix& w) const {
        return (reduced_.adjoint() * w).cwiseAbs2();
    }

    [[nodiscard]] double term_rate(const Eigen::MatrixXd& rx, const RateTerm& t) const {
        double interference = 0.0;
        for (int l : t.interferers)
            interference += rx(t.user, l);
        return std::log2(1.0 + rx(t.user, t.signal) / (interference + noise_));
    }

    [[nodiscard]] std::vector<std::vector<TermBound>> linearize(const CMatrix& w0) const {
        const CMatrix a = reduced_.adjoint() * w0; // a(k, l) = g_k^H w_l
        const double inv_ln2 = 1.0 / std::numbers::ln2;
        std::vector<std::vector<TermBound>> out(prog_.groups.size());
        for (std::size_t gi = 0; gi < prog_.groups.size(); ++gi) {
            for (const auto& t : prog_.groups[gi].terms) {
                TermBound b;
                b.x0 = a(t.user, t.signal);
                b.y0 = noise_;
                for (int l : t.interferers)
                    b.y0 += std::norm(a(t.user, l));
                const double sig = std::norm(b.x0);
                const double gamma0 = sig / b.y0;
                const double total0 = sig + b.y0;
                b.quad = gamma0 / total0 * inv_ln2;
                b.constant = (std::log1p(gamma0) - gamma0) * inv_ln2 - b.quad * noise_;
                b.lin = b.x0 / b.y0 * inv_ln2;
                out[gi].push_back(b);
            }
        }
        return out;
    }

    // Value of a term's minorizer at w.
    [[nodiscard]] double bound_value(const CMatrix& a, const RateTerm& t, const TermBound& b) const {
        double v = b.constant + 2.0 * std::real(std::conj(b.lin) * a(t.user, t.signal));
        double q = std::norm(a(t.user, t.signal));
        for (int l : t.interferers)
            q += std::norm(a(t.user, l));
        return v - b.quad * q;
    }

    // Maximizes sum_t mu_t L_t(W) - lambda ||W||^2 over ||W||^2 <= P_t.
    // Columns decouple up to the shared power multiplier nu:
    //     w_l = (A_l + (lambda + nu) I)^{-1} b_l,
    // A_l = sum_k c_{l,k} g_k g_k^H. nu >= 0 is found by bisection.
    [[nodiscard]] CMatrix maximize_weighted(const std::vector<std::vector<TermBound>>& bounds,
                                            const std::vector<std::vector<double>>& mu,
                                            const std::vector<bool>& active, double lambda, double inner_tol) const {
        const int r = rank();
        const int cols = prog_.num_columns;
        const int k_users = static_cast<int>(reduced_.cols());
        Eigen::MatrixXd coef = Eigen::MatrixXd::Zero(cols, k_users);
        CMatrix rhs = CMatrix::Zero(r, cols);
        for (std::size_t gi = 0; gi < prog_.groups.size(); ++gi) {
            if (!active[gi])
                continue;
            const auto& terms = prog_.groups[gi].terms;
            for (std::size_t ti = 0; ti < terms.size(); ++ti) {
                const auto& t = terms[ti];
                const auto& b = bounds[gi][ti];
                const double m = mu[gi][ti];
                if (m == 0.0)
                    continue;
                rhs.col(t.signal) += (m * b.lin) * reduced_.col(t.user);
                coef(t.signal, t.user) += m * b.quad;
                for (int l : t.interferers)
                    coef(l, t.user) += m * b.quad;
            }
        }
        if (prog_.common_group >= 0 && !active[prog_.common_group])
            rhs.col(prog_.common_column).setZero();

        std::vector<RVector> eigvals(cols);
        std::vector<CVector> proj(cols);
        std::vector<CMatrix> vecs(cols);
        Eigen::SelfAdjointEigenSolver<CMatrix> eig;
        for (int l = 0; l < cols; ++l) {
            CMatrix a = reduced_ * coef.row(l).transpose().cast<cplx>().asDiagonal() * reduced_.adjoint();
            eig.compute(a);
            eigvals[l] = eig.eigenvalues().cwiseMax(0.0).array() + lambda;
            vecs[l] = eig.eigenvectors();
            proj[l] = vecs[l].adjoint() * rhs.col(l);
        }

        auto power_at = [&](double nu) {
            double p = 0.0;
            for (int l = 0; l < cols; ++l)
                for (int i = 0; i < r; ++i) {
                    const double num = std::norm(proj[l][i]);
                    if (num == 0.0)
                        continue;
                    const double den = eigvals[l][i] + nu;
                    if (den <= 0.0)
                        return std::numeric_limits<double>::infinity();
                    p += num / (den * den);
                }
            return p;
        };

        double nu = 0.0;
        if (power_at(0.0) > budget_) {
            double rhs_norm = 0.0;
            for (int l = 0; l < cols; ++l)
                rhs_norm += proj[l].squaredNorm();
            double lo = 0.0;
            double hi = std::sqrt(rhs_norm / budget_);
            for (int it = 0; it < 200; ++it) {
                const double mid = 0.5 * (lo + hi);
                if (power_at(mid) > budget_)
                    lo = mid;
                else
                    hi = mid;
                if (hi - lo <= inner_tol * 1e-3 * hi)
                    break;
            }
            nu = hi;
        }

        CMatrix w(r, cols);
        for (int l = 0; l < cols; ++l) {
            CVector z = proj[l];
            for (int i = 0; i < r; ++i)
                z[i] = proj[l][i] == cplx{} ? cplx{} : proj[l][i] / (eigvals[l][i] + nu);
            w.col(l) = vecs[l] * z;
        }
        const double p = w.squaredNorm();
        if (p > budget_)
            w *= std::sqrt(budget_ / p);
        return w;
    }

    // min over the per-group simplex weights of the max above. The inner
    // maximizer is unique, so the dual is differentiable with partial
    // derivative L_t(W*(mu)).
    [[nodiscard]] CMatrix solve_dual(const std::vector<std::vector<TermBound>>& bounds, const std::vector<bool>& active,
                                     double lambda, double inner_tol) const {
        std::vector<std::vector<double>> mu(prog_.groups.size());
        std::vector<int> free_groups;
        for (std::size_t gi = 0; gi < prog_.groups.size(); ++gi) {
            const auto n = prog_.groups[gi].terms.size();
            mu[gi].assign(n, prog_.groups[gi].weight / static_cast<double>(n));
            if (active[gi] && n > 1)
                free_groups.push_back(static_cast<int>(gi));
        }
        if (free_groups.empty())
            return maximize_weighted(bounds, mu, active, lambda, inner_tol);

        auto term_values = [&](const CMatrix& w, int gi) {
            const CMatrix a = reduced_.adjoint() * w;
            const auto& terms = prog_.groups[gi].terms;
            std::vector<double> v(terms.size());
            for (std::size_t ti = 0; ti < terms.size(); ++ti)
                v[ti] = bound_value(a, terms[ti], bounds[gi][ti]);
            return v;
        };

        if (free_groups.size() == 1 && prog_.groups[free_groups[0]].terms.size() == 2) {
            const int gi = free_groups[0];
            const double weight = prog_.groups[gi].weight;
            auto solve_at = [&](double t) {
                mu[gi][0] = weight * t;
                mu[gi][1] = weight * (1.0 - t);
                CMatrix w = maximize_weighted(bounds, mu, active, lambda, inner_tol);
                const auto v = term_values(w, gi);
                return std::pair{std::move(w), v[0] - v[1]};
            };
            // Derivative of the dual in t is weight * (L_0 - L_1), nondecreasing.
            auto [w_lo, d_lo] = solve_at(0.0);
            if (d_lo >= 0.0)
                return w_lo;
            auto [w_hi, d_hi] = solve_at(1.0);
            if (d_hi <= 0.0)
                return w_hi;
            double lo = 0.0;
            double hi = 1.0;
            CMatrix w_mid;
            for (int it = 0; it < 60; ++it) {
                const double mid = 0.5 * (lo + hi);
                auto [w, d] = solve_at(mid);
                w_mid = std::move(w);
                if (d > 0.0)
                    hi = mid;
                else if (d < 0.0)
                    lo = mid;
                else
                    break;
                if (std::abs(d) <= inner_tol * 1e-3 || hi - lo <= 1e-14)
                    break;
            }
            return w_mid;
        }

        // General case: exponentiated-gradient descent on the product of
        // simplices, keeping the primal iterate with the best true objective.
        CMatrix best;
        double best_obj = -std::numeric_limits<double>::infinity();
        for (int it = 0; it < 400; ++it) {
            CMatrix w = maximize_weighted(bounds, mu, active, lambda, inner_tol);
            const double obj = energy_efficiency(w);
            if (obj > best_obj) {
                best_obj = obj;
                best = w;
            }
            const double step = 2.0 / std::sqrt(1.0 + it);
            for (int gi : free_groups) {
                const auto v = term_values(w, gi);
                const double vmin = *std::min_element(v.begin(), v.end());
                const double vmax = *std::max_element(v.begin(), v.end());
                const double scale = vmax - vmin > 0.0 ? step / (vmax - vmin) : 0.0;
                double total = 0.0;
                for (std::size_t ti = 0; ti < v.size(); ++ti) {
                    mu[gi][ti] = std::max(mu[gi][ti], 1e-300) * std::exp(-scale * (v[ti] - vmin));
                    total += mu[gi][ti];
                }
                for (auto& m : mu[gi])
                    m *= prog_.groups[gi].weight / total;
            }
        }
        return best;
    }

    Scheme scheme_;
    double noise_;
    double budget_;
    double static_power_;
    std::vector<double> weights_;
    RateProgram prog_;
    CMatrix basis_;   // M x r orthonormal basis of span{g_k}
    CMatrix reduced_; // r x K effective channels in that basis
};

} // namespace uavee::detail

#endif // UAVEE_DETAIL_SCA_ENGINE_HPP
