// SPDX-License-Identifier: MIT
//
// Discrete equiprobable one-period markets: the pricing-kernel family,
// pricing, and superhedging cost.
#pragma once

#include "effico/error.hpp"
#include "effico/scalar.hpp"

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace effico {

template <class S>
using Payoff = std::vector<S>;

template <class S>
using Kernel = std::vector<S>;

/// n equiprobable states, d risky assets and a riskless asset paying 1 (zero rate).
template <class S>
class DiscreteMarket {
public:
    DiscreteMarket(std::vector<S> s0, std::vector<std::vector<S>> sT) : s0_(std::move(s0)), sT_(std::move(sT)) {
        require(!s0_.empty(), ErrorCode::InvalidArgument, "market needs at least one asset");
        require(s0_.size() == sT_.size(), ErrorCode::DimensionMismatch, "s0 and sT have different asset counts");
        n_ = sT_.front().size();
        require(n_ >= 2, ErrorCode::InvalidArgument, "market needs at least two states");
        for (std::size_t j = 0; j < s0_.size(); ++j) {
            require(sT_[j].size() == n_, ErrorCode::DimensionMismatch, "sT rows must all have n entries");
            require(s0_[j] > S(0), ErrorCode::InvalidArgument, "initial prices must be positive");
            for (const auto& v : sT_[j]) {
                if constexpr (!is_exact_v<S>) require(std::isfinite(v), ErrorCode::InvalidArgument, "non-finite sT");
                require(!(v < S(0)), ErrorCode::InvalidArgument, "terminal prices must be nonnegative");
            }
        }
    }

    /// s0 = 2, sT = (4, 2, 1).
    static DiscreteMarket canonical() { return DiscreteMarket({S(2)}, {{S(4), S(2), S(1)}}); }

    [[nodiscard]] std::size_t states() const { return n_; }
    [[nodiscard]] std::size_t assets() const { return s0_.size(); }
    [[nodiscard]] const std::vector<S>& s0() const { return s0_; }
    [[nodiscard]] const std::vector<std::vector<S>>& sT() const { return sT_; }

private:
    std::vector<S> s0_;
    std::vector<std::vector<S>> sT_;
    std::size_t n_ = 0;
};

/// One-parameter family u -> base + u * direction on [u_lo, u_hi]. The
/// parameter is the state price (xi_j / n) of the first state whose kernel
/// weight varies along the family.
template <class S>
struct Parametric1D {
    Kernel<S> base;
    Kernel<S> direction;
    S u_lo;
    S u_hi;

    [[nodiscard]] Kernel<S> kernel_at(const S& u) const {
        Kernel<S> k(base.size());
        for (std::size_t i = 0; i < base.size(); ++i) k[i] = base[i] + u * direction[i];
        return k;
    }
};

template <class S>
struct PolytopeVertices {
    std::vector<Kernel<S>> vertices;
};

template <class S>
class KernelFamily {
public:
    explicit KernelFamily(Parametric1D<S> p) : repr_(std::move(p)) {}
    explicit KernelFamily(PolytopeVertices<S> v) : repr_(std::move(v)) {}

    [[nodiscard]] bool parametric() const { return std::holds_alternative<Parametric1D<S>>(repr_); }
    [[nodiscard]] const Parametric1D<S>& line() const { return std::get<Parametric1D<S>>(repr_); }
    [[nodiscard]] const PolytopeVertices<S>& polytope() const { return std::get<PolytopeVertices<S>>(repr_); }

    [[nodiscard]] std::size_t states() const {
        return parametric() ? line().base.size() : polytope().vertices.front().size();
    }

    /// Extreme points of the closed family.
    [[nodiscard]] std::vector<Kernel<S>> vertices() const {
        if (parametric()) return {line().kernel_at(line().u_lo), line().kernel_at(line().u_hi)};
        return polytope().vertices;
    }

private:
    std::variant<Parametric1D<S>, PolytopeVertices<S>> repr_;
};

template <class S>
bool is_boundary_kernel(const Kernel<S>& k, Tolerance<S> tol = {}) {
    return std::any_of(k.begin(), k.end(), [&](const S& v) { return tol.is_zero(v); });
}

template <class S>
S price(const Kernel<S>& kernel, const Payoff<S>& payoff) {
    require(kernel.size() == payoff.size(), ErrorCode::DimensionMismatch, "kernel and payoff sizes differ");
    S acc{0};
    for (std::size_t i = 0; i < kernel.size(); ++i) acc += kernel[i] * payoff[i];
    return acc / S(static_cast<long long>(kernel.size()));
}

namespace detail {

/// Reduced row echelon form of [A | b]; returns pivot columns, or nullopt if inconsistent.
template <class S>
std::optional<std::vector<std::size_t>> rref(std::vector<std::vector<S>>& a, Tolerance<S> tol) {
    const std::size_t rows = a.size();
    const std::size_t cols = rows ? a[0].size() - 1 : 0;
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t best = rows;
        S mag{0};
        for (std::size_t i = r; i < rows; ++i) {
            S m = abs_value<S>(a[i][c]);
            if (m > mag) {
                mag = m;
                best = i;
            }
        }
        if (best == rows || tol.is_zero(mag)) continue;
        std::swap(a[r], a[best]);
        const S piv = a[r][c];
        for (auto& v : a[r]) v /= piv;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || a[i][c] == S(0)) continue;
            const S f = a[i][c];
            for (std::size_t j = 0; j <= cols; ++j) a[i][j] -= f * a[r][j];
        }
        pivots.push_back(c);
        ++r;
    }
    for (std::size_t i = r; i < rows; ++i) {
        if (!tol.is_zero(a[i][cols])) return std::nullopt;
    }
    a.resize(r);
    return pivots;
}

/// Kernel constraint system: (1/n) sum xi = 1, (1/n) sum xi sT[j] = s0[j].
template <class S>
std::vector<std::vector<S>> kernel_system(const DiscreteMarket<S>& m) {
    const auto n = m.states();
    const S inv_n = S(1) / S(static_cast<long long>(n));
    std::vector<std::vector<S>> a;
    std::vector<S> row(n + 1, inv_n);
    row[n] = S(1);
    a.push_back(row);
    for (std::size_t j = 0; j < m.assets(); ++j) {
        for (std::size_t i = 0; i < n; ++i) row[i] = m.sT()[j][i] * inv_n;
        row[n] = m.s0()[j];
        a.push_back(row);
    }
    return a;
}

template <class S>
bool combinations_next(std::vector<std::size_t>& idx, std::size_t n) {
    const std::size_t k = idx.size();
    for (std::size_t i = k; i-- > 0;) {
        if (idx[i] < n - k + i) {
            ++idx[i];
            for (std::size_t j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
            return true;
        }
    }
    return false;
}

}  // namespace detail

inline constexpr std::size_t kMaxEnumerationStates = 12;

/// Closed pricing-kernel family of the market. One-dimensional solution sets
/// come back as Parametric1D; otherwise all vertices of the polytope are
/// enumerated through basic feasible solutions.
template <class S>
KernelFamily<S> kernel_family(const DiscreteMarket<S>& market, Tolerance<S> tol = {1e-10}) {
    const auto n = market.states();
    auto sys = detail::kernel_system(market);
    auto pivots = detail::rref(sys, tol);
    require(pivots.has_value(), ErrorCode::Infeasible, "kernel constraints are inconsistent");
    const std::size_t rank = pivots->size();
    const std::size_t dim = n - rank;

    std::vector<bool> is_pivot(n, false);
    for (auto c : *pivots) is_pivot[c] = true;

    if (dim == 0) {
        Kernel<S> k(n, S(0));
        for (std::size_t r = 0; r < rank; ++r) k[(*pivots)[r]] = sys[r][n];
        for (auto& v : k) {
            require(!tol.lt(v, S(0)), ErrorCode::Infeasible, "unique kernel has a negative entry (arbitrage)");
            if (tol.is_zero(v)) v = S(0);
        }
        return KernelFamily<S>(PolytopeVertices<S>{{k}});
    }

    if (dim == 1) {
        std::size_t free_col = 0;
        while (is_pivot[free_col]) ++free_col;
        // xi = particular + w * dir where w = xi[free_col]
        Kernel<S> particular(n, S(0)), dir(n, S(0));
        dir[free_col] = S(1);
        for (std::size_t r = 0; r < rank; ++r) {
            particular[(*pivots)[r]] = sys[r][n];
            dir[(*pivots)[r]] = -sys[r][free_col];
        }
        // reparametrize by the first varying coordinate: u = xi[lead] / n
        std::size_t lead = 0;
        while (tol.is_zero(dir[lead])) ++lead;
        const S nn = S(static_cast<long long>(n));
        // xi[lead] = particular[lead] + w dir[lead] = n u  =>  w = (n u - particular[lead]) / dir[lead]
        Parametric1D<S> line;
        line.base.resize(n);
        line.direction.resize(n);
        for (std::size_t i = 0; i < n; ++i) {
            line.direction[i] = dir[i] * nn / dir[lead];
            line.base[i] = particular[i] - dir[i] * particular[lead] / dir[lead];
        }
        line.base[lead] = S(0);
        line.direction[lead] = nn;
        // intersect with xi >= 0
        std::optional<S> lo, hi;
        for (std::size_t i = 0; i < n; ++i) {
            const S& d = line.direction[i];
            const S& b = line.base[i];
            if (tol.is_zero(d)) {
                require(!tol.lt(b, S(0)), ErrorCode::Infeasible, "kernel constraints force a negative weight");
                continue;
            }
            S root = -b / d;
            if (d > S(0)) {
                if (!lo || *lo < root) lo = root;
            } else {
                if (!hi || root < *hi) hi = root;
            }
        }
        require(lo && hi, ErrorCode::Infeasible, "kernel family is unbounded");
        require(!tol.lt(*hi, *lo), ErrorCode::Infeasible, "no nonnegative pricing kernel (arbitrage)");
        if (*hi < *lo) hi = lo;
        // clears -0 and round-off residue
        for (auto* v : {&*lo, &*hi})
            if (tol.is_zero(*v)) *v = S(0);
        for (auto& v : line.base)
            if (tol.is_zero(v)) v = S(0);
        line.u_lo = *lo;
        line.u_hi = *hi;
        return KernelFamily<S>(std::move(line));
    }

    require(n <= kMaxEnumerationStates, ErrorCode::DimensionTooLarge,
            "vertex enumeration supports at most 12 states");
    // basic feasible solutions: choose `rank` basic columns, others zero
    std::vector<Kernel<S>> verts;
    std::vector<std::size_t> basis(rank);
    for (std::size_t i = 0; i < rank; ++i) basis[i] = i;
    Tolerance<S> dedup{1e-10};
    do {
        std::vector<std::vector<S>> sub(rank, std::vector<S>(rank + 1));
        for (std::size_t r = 0; r < rank; ++r) {
            for (std::size_t c = 0; c < rank; ++c) sub[r][c] = sys[r][basis[c]];
            sub[r][rank] = sys[r][n];
        }
        auto piv = detail::rref(sub, tol);
        if (!piv || piv->size() != rank) continue;
        Kernel<S> k(n, S(0));
        bool feasible = true;
        for (std::size_t r = 0; r < rank; ++r) {
            S v = sub[r][rank];
            if (tol.lt(v, S(0))) {
                feasible = false;
                break;
            }
            if (tol.is_zero(v)) v = S(0);
            k[basis[(*piv)[r]]] = v;
        }
        if (!feasible) continue;
        bool dup = std::any_of(verts.begin(), verts.end(), [&](const Kernel<S>& o) {
            for (std::size_t i = 0; i < n; ++i)
                if (!dedup.eq(o[i], k[i], o[i])) return false;
            return true;
        });
        if (!dup) verts.push_back(std::move(k));
    } while (detail::combinations_next<S>(basis, n));
    require(!verts.empty(), ErrorCode::Infeasible, "no nonnegative pricing kernel (arbitrage)");
    return KernelFamily<S>(PolytopeVertices<S>{std::move(verts)});
}

template <class S>
struct AttainingKernel {
    Kernel<S> kernel;
    std::optional<S> u;  // set for one-parameter families
    bool boundary = false;
};

template <class S>
struct SuperhedgeResult {
    S value{0};
    std::vector<AttainingKernel<S>> maximizers;
    /// For one-parameter families: the closed interval of parameters attaining the value.
    std::optional<std::pair<S, S>> u_range;

    [[nodiscard]] bool boundary() const {
        return std::any_of(maximizers.begin(), maximizers.end(), [](const auto& m) { return m.boundary; });
    }
};

/// sup over the closed kernel family of the price of `payoff`. Price is linear
/// in the kernel, so the supremum sits on an extreme point.
template <class S>
SuperhedgeResult<S> superhedge_cost(const KernelFamily<S>& family, const Payoff<S>& payoff,
                                    Tolerance<S> tol = {1e-12}) {
    require(payoff.size() == family.states(), ErrorCode::DimensionMismatch, "payoff size differs from state count");
    SuperhedgeResult<S> out;
    S scale{1};
    for (const auto& v : payoff) scale = std::max<S>(scale, abs_value<S>(v));

    if (family.parametric()) {
        const auto& line = family.line();
        S at_lo = price(line.kernel_at(line.u_lo), payoff);
        S at_hi = price(line.kernel_at(line.u_hi), payoff);
        auto add = [&](const S& u) {
            auto k = line.kernel_at(u);
            out.maximizers.push_back({k, u, is_boundary_kernel(k)});
        };
        if (tol.eq(at_lo, at_hi, scale)) {
            out.value = std::max(at_lo, at_hi);
            add(line.u_lo);
            if (line.u_hi != line.u_lo) add(line.u_hi);
            out.u_range = std::make_pair(line.u_lo, line.u_hi);
        } else if (at_lo > at_hi) {
            out.value = at_lo;
            add(line.u_lo);
            out.u_range = std::make_pair(line.u_lo, line.u_lo);
        } else {
            out.value = at_hi;
            add(line.u_hi);
            out.u_range = std::make_pair(line.u_hi, line.u_hi);
        }
        return out;
    }

    const auto& verts = family.polytope().vertices;
    std::vector<S> prices;
    prices.reserve(verts.size());
    for (const auto& v : verts) prices.push_back(price(v, payoff));
    out.value = *std::max_element(prices.begin(), prices.end());
    for (std::size_t i = 0; i < verts.size(); ++i) {
        if (tol.eq(prices[i], out.value, scale)) {
            out.maximizers.push_back({verts[i], std::nullopt, is_boundary_kernel(verts[i])});
        }
    }
    return out;
}

/// A payoff is attainable iff every kernel of the family gives it the same price.
template <class S>
bool is_attainable(const KernelFamily<S>& family, const Payoff<S>& payoff, Tolerance<S> tol = {1e-12}) {
    auto verts = family.vertices();
    S first = price(verts.front(), payoff);
    S scale{1};
    for (const auto& v : payoff) scale = std::max<S>(scale, abs_value<S>(v));
    return std::all_of(verts.begin(), verts.end(), [&](const auto& k) { return tol.eq(price(k, payoff), first, scale); });
}

}  // namespace effico
