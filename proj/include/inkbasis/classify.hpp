#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "inkbasis/errors.hpp"
#include "inkbasis/normalize.hpp"
#include "inkbasis/sobolev.hpp"
#include "inkbasis/symbol.hpp"
#include "inkbasis/trace.hpp"

namespace inkbasis {

namespace detail {

// sum_{i=1}^{d} ((x_i - u_i)^2 + (y_i - v_i)^2) h_i; coefficient arrays start at index 1.
inline double weighted_sq_diff(const SymbolCoeffs& a, const SymbolCoeffs& b, std::span<const double> h) {
    double acc = 0.0;
    for (std::size_t i = 0; i < a.xs.size(); ++i) {
        const double dx = a.xs[i] - b.xs[i];
        const double dy = a.ys[i] - b.ys[i];
        acc += (dx * dx + dy * dy) * h[i + 1];
    }
    return acc;
}

inline void check_compatible(const SymbolCoeffs& c, const OrthoBasis& basis, const std::string& id) {
    if (c.basis_id != id)
        throw BasisMismatch("symbol basis '" + c.basis_id + "' does not match '" + id + "'");
    if (c.xs.size() != static_cast<std::size_t>(basis.degree()) || c.ys.size() != c.xs.size())
        throw LengthMismatch("symbol has " + std::to_string(c.xs.size()) + " coefficients, basis degree is " +
                             std::to_string(basis.degree()));
}

inline void check_compatible(const SymbolCoeffs& c, const OrthoBasis& basis) { check_compatible(c, basis, basis.id()); }

inline void check_all(std::span<const SymbolCoeffs> items, const OrthoBasis& basis) {
    const auto id = basis.id();
    for (const auto& c : items) check_compatible(c, basis, id);
}

// Deterministic Fisher-Yates. std::shuffle and the std distributions are
// implementation-defined, mt19937_64's raw output is not.
inline void stable_shuffle(std::vector<std::size_t>& v, std::uint64_t seed) {
    std::mt19937_64 eng(seed);
    for (std::size_t i = v.size(); i > 1; --i) {
        const std::uint64_t bound = i;
        const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                    std::numeric_limits<std::uint64_t>::max() % bound;
        std::uint64_t r;
        do r = eng();
        while (r >= limit);
        std::swap(v[i - 1], v[static_cast<std::size_t>(r % bound)]);
    }
}

template <class Fn>
void parallel_for(std::size_t n, Fn&& fn) {
    const std::size_t hw = std::max(1u, std::thread::hardware_concurrency());
    const std::size_t workers = std::min<std::size_t>(hw, (n + 63) / 64);
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < workers; ++w)
        pool.emplace_back([&, w] {
            for (std::size_t i = w; i < n; i += workers) fn(i);
        });
}

}  // namespace detail

/// Squared L2 distance (under the basis inner product) between the curves
/// that two symbols describe, ignoring their constant terms.
inline double coeff_distance_sq(const SymbolCoeffs& a, const SymbolCoeffs& b, const OrthoBasis& basis) {
    detail::check_compatible(a, basis);
    detail::check_compatible(b, basis);
    return detail::weighted_sq_diff(a, b, basis.sq_norms());
}

/// Reconstructed sample points (in input coordinates) at the trace's knots.
inline std::vector<Point> reconstruct_points(const NormalizedTrace& n, const SymbolCoeffs& c, const OrthoBasis& basis) {
    const auto [sx, sy] = full_series(c);
    const auto px = synthesize(sx, basis), py = synthesize(sy, basis);
    std::vector<Point> out;
    out.reserve(n.knots.size());
    for (double s : n.knots) out.push_back({evaluate(px, s) * n.scale_back(), evaluate(py, s) * n.scale_back()});
    return out;
}

/// Sum of Euclidean distances between the input points and the truncated
/// series evaluated at the same arc-length parameters.
inline double representation_error(const InkTrace& t, const NormalizedTrace& n, const SymbolCoeffs& c,
                                   const OrthoBasis& basis) {
    if (n.knots.size() != t.size())
        throw LengthMismatch("representation_error: " + std::to_string(n.knots.size()) + " knots for " +
                             std::to_string(t.size()) + " points");
    detail::check_compatible(c, basis);
    const auto rec = reconstruct_points(n, c, basis);
    double err = 0.0;
    for (std::size_t i = 0; i < rec.size(); ++i)
        err += std::hypot(t.points()[i].x - rec[i].x, t.points()[i].y - rec[i].y);
    return err;
}

struct MatchResult {
    std::size_t model_index = 0;
    double distance_sq = 0.0;
};

/// Nearest model under coeff_distance_sq; ties go to the lowest index.
inline MatchResult match_symbol(const SymbolCoeffs& sample, std::span<const SymbolCoeffs> models, const OrthoBasis& basis) {
    if (models.empty()) throw EmptyModelSet("match_symbol: no models");
    MatchResult best{0, coeff_distance_sq(sample, models[0], basis)};
    for (std::size_t i = 1; i < models.size(); ++i) {
        const double d = coeff_distance_sq(sample, models[i], basis);
        if (d < best.distance_sq) best = {i, d};
    }
    return best;
}

/// Symbols of one basis plus a deterministic train/test split: the items are
/// shuffled with `split_seed` and the first round(n * split_ratio) form the
/// training set.
class LabeledDataset {
public:
    static constexpr double kDefaultSplit = 2.0 / 3.0;

    explicit LabeledDataset(std::vector<SymbolCoeffs> items, std::uint64_t split_seed = 0,
                            double split_ratio = kDefaultSplit)
        : items_(std::move(items)), seed_(split_seed), ratio_(split_ratio) {
        if (!(ratio_ > 0.0 && ratio_ < 1.0)) throw DomainError("split ratio must lie in (0, 1)");
        for (const auto& c : items_)
            if (c.basis_id != items_.front().basis_id) throw BasisMismatch("dataset mixes bases");
        std::vector<std::size_t> order(items_.size());
        std::iota(order.begin(), order.end(), std::size_t{0});
        detail::stable_shuffle(order, seed_);
        const auto n_train = static_cast<std::size_t>(std::llround(static_cast<double>(items_.size()) * ratio_));
        for (std::size_t i = 0; i < order.size(); ++i) (i < n_train ? train_ : test_).push_back(items_[order[i]]);
    }

    const std::vector<SymbolCoeffs>& items() const noexcept { return items_; }
    const std::vector<SymbolCoeffs>& train() const noexcept { return train_; }
    const std::vector<SymbolCoeffs>& test() const noexcept { return test_; }
    std::uint64_t split_seed() const noexcept { return seed_; }
    double split_ratio() const noexcept { return ratio_; }
    std::string basis_id() const { return items_.empty() ? std::string() : items_.front().basis_id; }

private:
    std::vector<SymbolCoeffs> items_;
    std::uint64_t seed_;
    double ratio_;
    std::vector<SymbolCoeffs> train_;
    std::vector<SymbolCoeffs> test_;
};

struct Neighbour {
    std::size_t index;
    double distance_sq;
};

/// The k nearest training items, ordered by distance then by dataset order.
inline std::vector<Neighbour> nearest(std::span<const SymbolCoeffs> train, const SymbolCoeffs& query, std::size_t k,
                                      const OrthoBasis& basis, bool checked = true) {
    if (checked) {
        detail::check_all(std::span(&query, 1), basis);
        detail::check_all(train, basis);
    }
    std::vector<Neighbour> all(train.size());
    for (std::size_t i = 0; i < train.size(); ++i)
        all[i] = {i, detail::weighted_sq_diff(query, train[i], basis.sq_norms())};
    k = std::min(k, all.size());
    auto less = [](const Neighbour& a, const Neighbour& b) {
        return a.distance_sq < b.distance_sq || (a.distance_sq == b.distance_sq && a.index < b.index);
    };
    std::partial_sort(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(k), all.end(), less);
    all.resize(k);
    return all;
}

/// Majority vote among the first k neighbours. Vote ties go to the smaller
/// summed distance, then to the lexicographically smaller label.
inline std::string vote(std::span<const SymbolCoeffs> train, std::span<const Neighbour> neighbours, std::size_t k) {
    struct Tally {
        std::size_t votes = 0;
        double dist = 0.0;
    };
    std::map<std::string, Tally> tally;
    for (std::size_t i = 0; i < k && i < neighbours.size(); ++i) {
        auto& t = tally[train[neighbours[i].index].label.value_or("")];
        ++t.votes;
        t.dist += neighbours[i].distance_sq;
    }
    const std::string* best = nullptr;
    Tally bt;
    for (const auto& [label, t] : tally)  // map order gives the lexicographic tie-break
        if (!best || t.votes > bt.votes || (t.votes == bt.votes && t.dist < bt.dist)) {
            best = &label;
            bt = t;
        }
    return best ? *best : std::string();
}

inline std::string knn_classify(std::span<const SymbolCoeffs> train, const SymbolCoeffs& query, std::size_t k,
                                const OrthoBasis& basis) {
    if (train.empty()) throw EmptyTrainingSet("knn_classify: empty training set");
    if (k < 1 || k > train.size()) throw DomainError("knn_classify: k must be in [1, |train|]");
    const auto nn = nearest(train, query, k, basis);
    return vote(train, nn, k);
}

/// Classifies against the training portion of `train`.
inline std::string knn_classify(const LabeledDataset& train, const SymbolCoeffs& query, std::size_t k,
                                const OrthoBasis& basis) {
    return knn_classify(std::span<const SymbolCoeffs>(train.train()), query, k, basis);
}

/// Test-set accuracy for every k in [k_min, k_max]; neighbours are found once
/// per query and reused across k.
inline std::vector<double> accuracy_by_k(std::span<const SymbolCoeffs> train, std::span<const SymbolCoeffs> test,
                                         const OrthoBasis& basis, std::size_t k_min, std::size_t k_max) {
    if (train.empty()) throw EmptyTrainingSet("accuracy_by_k: empty training set");
    if (k_min < 1 || k_min > k_max || k_max > train.size()) throw DomainError("accuracy_by_k: bad k range");
    detail::check_all(train, basis);
    detail::check_all(test, basis);
    const std::size_t nk = k_max - k_min + 1;
    std::vector<std::vector<char>> correct(test.size(), std::vector<char>(nk, 0));
    detail::parallel_for(test.size(), [&](std::size_t q) {
        const auto nn = nearest(train, test[q], k_max, basis, false);
        for (std::size_t k = k_min; k <= k_max; ++k)
            correct[q][k - k_min] = vote(train, nn, k) == test[q].label.value_or("");
    });
    std::vector<double> acc(nk, 0.0);
    if (test.empty()) return acc;
    for (std::size_t j = 0; j < nk; ++j) {
        std::size_t hits = 0;
        for (const auto& row : correct) hits += row[j] ? 1 : 0;
        acc[j] = static_cast<double>(hits) / static_cast<double>(test.size());
    }
    return acc;
}

struct SweepConfig {
    std::vector<BasisKind> kinds{std::begin(kAllBasisKinds), std::end(kAllBasisKinds)};
    int degree = 10;
    double lambda = kDefaultLambda;
    std::size_t k_min = 1;
    std::size_t k_max = 10;
    std::uint64_t seed = 0;
    double split = LabeledDataset::kDefaultSplit;
    bool train_as_test = false;  ///< classify the whole set against itself
};

struct SweepRow {
    BasisKind kind;
    std::size_t k;
    double accuracy;
    double error_rate;
};

/// kNN accuracy for each basis kind and each k. Every kind sees the same
/// split because the split depends only on (seed, ratio, item count).
inline std::vector<SweepRow> accuracy_sweep(std::span<const NormalizedTrace> data, const SweepConfig& cfg) {
    if (data.empty()) throw EmptyTrainingSet("accuracy_sweep: no data");
    std::vector<SweepRow> rows;
    for (auto kind : cfg.kinds) {
        const auto basis = build_basis(kind, cfg.degree, cfg.lambda);
        std::vector<SymbolCoeffs> items(data.size());
        detail::parallel_for(data.size(), [&](std::size_t i) { items[i] = to_coeffs(data[i], basis); });
        std::vector<double> acc;
        if (cfg.train_as_test) {
            acc = accuracy_by_k(items, items, basis, cfg.k_min, cfg.k_max);
        } else {
            const LabeledDataset ds(std::move(items), cfg.seed, cfg.split);
            acc = accuracy_by_k(ds.train(), ds.test(), basis, cfg.k_min, cfg.k_max);
        }
        for (std::size_t j = 0; j < acc.size(); ++j) rows.push_back({kind, cfg.k_min + j, acc[j], 1.0 - acc[j]});
    }
    return rows;
}

}  // namespace inkbasis
