#pragma once

// Minimum-distance certification.
//
// A code with parity-check matrix H has distance >= d iff every d-1 columns of
// H are linearly independent. Two verifiers establish that:
//
//  * exhaustive: rank-checks every (d-1)-column subset;
//  * structured: for the block layout built in code.hpp, a column whose block
//    occurs once in a subset has a zero coefficient in every dependency (its
//    indicator row has no other support). The support of a minimal dependency
//    therefore uses every one of its blocks at least twice, which leaves the
//    patterns (2), (3), (4) [, (5)] inside one block and (2,2) [, (3,2)]
//    across two blocks.
//
// Both return the lexicographically first failure in their canonical
// enumeration order, shrunk to a smallest dependent column set, so reports do
// not depend on the thread count.

#include "lrc/code.hpp"
#include "lrc/matrix.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <map>
#include <mutex>
#include <optional>
#include <random>
#include <string>
#include <thread>
#include <vector>

namespace lrc {

enum class VerifyMethod { exhaustive, structured, sampled };

constexpr std::string_view to_string(VerifyMethod m) noexcept {
    switch (m) {
        case VerifyMethod::exhaustive: return "exhaustive";
        case VerifyMethod::structured: return "structured";
        case VerifyMethod::sampled: return "sampled";
    }
    return "unknown";
}

struct VerifyOptions {
    unsigned threads = 0;                    // 0: hardware concurrency
    std::uint64_t budget = 100'000'000;      // exhaustive subset limit
};

struct VerificationReport {
    bool verdict = false;
    VerifyMethod method = VerifyMethod::exhaustive;
    int d_checked = 0;
    /// Only the sampled mode is non-certifying; a false verdict is always certified.
    bool certifying = true;
    std::map<std::string, std::uint64_t> patterns; // checks performed per pattern
    std::uint64_t checked = 0;                     // total rank checks
    std::vector<std::size_t> certificate;          // dependent columns when verdict is false
    std::optional<std::vector<std::size_t>> equality_witness; // d dependent columns
};

/// Distance proven by a report: d when every d-1 columns are independent and a
/// d-column dependency was exhibited.
inline std::optional<int> verified_distance(const VerificationReport& rep) {
    if (rep.verdict && rep.certifying && rep.equality_witness) return rep.d_checked;
    return std::nullopt;
}

inline bool columns_dependent(const Field& f, const Matrix& H, std::span<const std::size_t> cols) {
    return rank(f, H.select_columns(cols)) < cols.size();
}

/// Smallest dependent subset of `cols` (ties broken lexicographically);
/// empty when `cols` is independent.
inline std::vector<std::size_t> minimal_dependent_subset(const Field& f, const Matrix& H,
                                                         std::vector<std::size_t> cols) {
    std::sort(cols.begin(), cols.end());
    const std::size_t s = cols.size();
    for (std::size_t size = 1; size <= s; ++size) {
        std::vector<std::size_t> idx(size);
        for (std::size_t i = 0; i < size; ++i) idx[i] = i;
        while (true) {
            std::vector<std::size_t> pick(size);
            for (std::size_t i = 0; i < size; ++i) pick[i] = cols[idx[i]];
            if (columns_dependent(f, H, pick)) return pick;
            std::size_t i = size;
            while (i > 0 && idx[i - 1] == s - size + i - 1) --i;
            if (i == 0) break;
            ++idx[i - 1];
            for (std::size_t j = i; j < size; ++j) idx[j] = idx[j - 1] + 1;
        }
    }
    return {};
}

namespace detail {

/// Column-sparse copy of H for fast small-subset rank checks.
class SparseColumns {
public:
    SparseColumns(const Matrix& H) : rows_(H.rows()), cols_(H.cols()) {
        start_.reserve(cols_ + 1);
        for (std::size_t c = 0; c < cols_; ++c) {
            start_.push_back(entries_.size());
            for (std::size_t r = 0; r < rows_; ++r)
                if (!H(r, c).is_zero()) entries_.push_back({static_cast<std::uint32_t>(r), H(r, c)});
        }
        start_.push_back(entries_.size());
    }

    struct Entry {
        std::uint32_t row;
        Element value;
    };

    std::size_t rows() const noexcept { return rows_; }
    std::span<const Entry> column(std::size_t c) const noexcept {
        return {entries_.data() + start_[c], start_[c + 1] - start_[c]};
    }

private:
    std::size_t rows_, cols_;
    std::vector<std::size_t> start_;
    std::vector<Entry> entries_;
};

/// Full-column-rank test on the rows touched by a small column subset.
/// One instance per thread.
class SubsetRanker {
public:
    SubsetRanker(const Field& f, const SparseColumns& cols) : f_(f), cols_(cols), slot_(cols.rows(), -1) {}

    bool independent(std::span<const std::size_t> subset) {
        const std::size_t s = subset.size();
        touched_.clear();
        for (auto c : subset)
            for (const auto& e : cols_.column(c))
                if (slot_[e.row] < 0) {
                    slot_[e.row] = static_cast<int>(touched_.size());
                    touched_.push_back(e.row);
                }
        const std::size_t R = touched_.size();
        bool full = R >= s;
        if (full) {
            mat_.assign(R * s, Element{});
            for (std::size_t j = 0; j < s; ++j)
                for (const auto& e : cols_.column(subset[j])) mat_[slot_[e.row] * s + j] = e.value;
            full = eliminate(R, s);
        }
        for (auto r : touched_) slot_[r] = -1;
        return full;
    }

private:
    bool eliminate(std::size_t R, std::size_t s) {
        for (std::size_t j = 0; j < s; ++j) {
            std::size_t p = j;
            while (p < R && mat_[p * s + j].is_zero()) ++p;
            if (p == R) return false;
            if (p != j)
                for (std::size_t k = j; k < s; ++k) std::swap(mat_[p * s + k], mat_[j * s + k]);
            const Element pinv = f_.inv(mat_[j * s + j]);
            for (std::size_t r = j + 1; r < R; ++r) {
                const Element v = mat_[r * s + j];
                if (v.is_zero()) continue;
                const Element factor = f_.mul(v, pinv);
                for (std::size_t k = j + 1; k < s; ++k)
                    mat_[r * s + k] = f_.sub(mat_[r * s + k], f_.mul(factor, mat_[j * s + k]));
            }
        }
        return true;
    }

    const Field& f_;
    const SparseColumns& cols_;
    std::vector<int> slot_;
    std::vector<std::uint32_t> touched_;
    std::vector<Element> mat_;
};

constexpr std::size_t kMaxPatterns = 8;

struct UnitOutcome {
    std::optional<std::vector<std::size_t>> failure;
    std::array<std::uint64_t, kMaxPatterns> counts{};
};

inline unsigned resolve_threads(unsigned requested) {
    if (requested) return requested;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw ? hw : 1;
}

/// Runs `units` work items on a pool. `make_worker()` is called once per
/// thread and returns worker(unit, outcome, cancelled). Units after the
/// earliest failing unit are skipped or cancelled; units before it always
/// run to completion, so the aggregate is scheduling-independent.
template <class MakeWorker>
std::pair<std::optional<std::size_t>, std::vector<UnitOutcome>> run_units(std::size_t units, unsigned threads,
                                                                          MakeWorker make_worker) {
    std::vector<UnitOutcome> outcomes(units);
    std::atomic<std::size_t> next{0};
    std::atomic<std::size_t> best{SIZE_MAX};
    std::mutex error_mutex;
    std::exception_ptr error;

    auto body = [&] {
        try {
            auto worker = make_worker();
            while (true) {
                const std::size_t u = next.fetch_add(1);
                if (u >= units) break;
                if (best.load(std::memory_order_relaxed) < u) continue;
                auto cancelled = [&best, u] { return best.load(std::memory_order_relaxed) < u; };
                worker(u, outcomes[u], cancelled);
                if (outcomes[u].failure) {
                    std::size_t cur = best.load();
                    while (u < cur && !best.compare_exchange_weak(cur, u)) {}
                }
            }
        } catch (...) {
            std::lock_guard lock(error_mutex);
            if (!error) error = std::current_exception();
            best.store(0);
        }
    };

    threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(units, 1))));
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < threads; ++t) pool.emplace_back(body);
    body();
    for (auto& th : pool) th.join();
    if (error) std::rethrow_exception(error);

    const std::size_t b = best.load();
    return {b == SIZE_MAX ? std::nullopt : std::optional<std::size_t>(b), std::move(outcomes)};
}

/// Advances positions lo_offset.. of a sorted combination with values below hi;
/// false when exhausted.
inline bool next_combination(std::vector<std::size_t>& idx, std::size_t lo_offset, std::size_t hi) {
    const std::size_t k = idx.size();
    std::size_t i = k;
    while (i > lo_offset && idx[i - 1] == hi - (k - i) - 1) --i;
    if (i == lo_offset) return false;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
    return true;
}

/// All k-combinations of the given items, lexicographic in position order.
inline std::vector<std::vector<std::size_t>> combinations(std::span<const std::size_t> items, std::size_t k) {
    std::vector<std::vector<std::size_t>> out;
    if (k > items.size()) return out;
    std::vector<std::size_t> idx(k);
    for (std::size_t i = 0; i < k; ++i) idx[i] = i;
    while (true) {
        std::vector<std::size_t> pick(k);
        for (std::size_t i = 0; i < k; ++i) pick[i] = items[idx[i]];
        out.push_back(std::move(pick));
        if (!next_combination(idx, 0, items.size())) break;
    }
    return out;
}

inline std::optional<std::vector<std::size_t>> equality_witness(const ParityCheckMatrix& H, SubsetRanker& ranker) {
    const auto d = static_cast<std::size_t>(H.d_target);
    if (H.block_size < d) return std::nullopt;
    for (std::size_t b = 0; b < H.num_blocks; ++b) {
        std::vector<std::size_t> cols(d);
        for (std::size_t j = 0; j < d; ++j) cols[j] = H.column_of(b, j);
        if (!ranker.independent(cols)) return cols;
    }
    return std::nullopt;
}

inline void finish_report(VerificationReport& rep, const Field& f, const Matrix& H,
                          const std::optional<std::size_t>& failing, const std::vector<UnitOutcome>& outcomes,
                          std::span<const std::string> names) {
    std::array<std::uint64_t, kMaxPatterns> totals{};
    const std::size_t last = failing ? *failing + 1 : outcomes.size();
    for (std::size_t u = 0; u < last; ++u)
        for (std::size_t p = 0; p < kMaxPatterns; ++p) totals[p] += outcomes[u].counts[p];
    rep.checked = 0;
    for (std::size_t p = 0; p < names.size(); ++p) {
        rep.patterns[names[p]] = totals[p];
        rep.checked += totals[p];
    }
    rep.verdict = !failing.has_value();
    if (failing) rep.certificate = minimal_dependent_subset(f, H, *outcomes[*failing].failure);
}

inline std::uint64_t saturating_binomial(std::uint64_t n, std::uint64_t k) {
    const BigInt b = binomial(n, k);
    return b > BigInt(UINT64_MAX) ? UINT64_MAX : static_cast<std::uint64_t>(b);
}

} // namespace detail

/// Rank-checks every (d-1)-column subset of H.
inline VerificationReport verify_distance_exhaustive(const Field& f, const Matrix& H, int d_target,
                                                     const VerifyOptions& opts = {}) {
    if (d_target < 2) throw Error(ErrorCode::InvalidParameters, "distance target must be at least 2");
    const std::size_t n = H.cols();
    const auto s = static_cast<std::size_t>(d_target - 1);
    const std::uint64_t total = detail::saturating_binomial(n, s);
    if (total > opts.budget)
        throw Error(ErrorCode::BudgetExceeded, "C(" + std::to_string(n) + ", " + std::to_string(s) + ") = " +
                                                   binomial(n, s).str() + " subsets exceed the budget of " +
                                                   std::to_string(opts.budget) + "; use structured mode");
    VerificationReport rep;
    rep.method = VerifyMethod::exhaustive;
    rep.d_checked = d_target;
    const std::string names[] = {"subsets_" + std::to_string(s)};
    if (s > n) {
        // fewer than d-1 columns: the condition holds vacuously
        rep.verdict = true;
        rep.patterns[names[0]] = 0;
        return rep;
    }

    const detail::SparseColumns sparse(H);
    const std::size_t units = n - s + 1; // one unit per first column
    auto [failing, outcomes] = detail::run_units(units, detail::resolve_threads(opts.threads), [&] {
        return [&, ranker = detail::SubsetRanker(f, sparse)](std::size_t first, detail::UnitOutcome& out,
                                                             const auto& cancelled) mutable {
            std::vector<std::size_t> idx(s);
            idx[0] = first;
            for (std::size_t i = 1; i < s; ++i) idx[i] = first + i;
            std::uint64_t count = 0;
            do {
                ++count;
                if (!ranker.independent(idx)) {
                    out.failure = idx;
                    break;
                }
                if ((count & 1023) == 0 && cancelled()) break;
            } while (detail::next_combination(idx, 1, n));
            out.counts[0] = count;
        };
    });
    detail::finish_report(rep, f, H, failing, outcomes, names);
    return rep;
}

inline VerificationReport verify_distance_exhaustive(const ParityCheckMatrix& H, const VerifyOptions& opts = {}) {
    auto rep = verify_distance_exhaustive(H.field, H.entries, H.d_target, opts);
    const detail::SparseColumns sparse(H.entries);
    detail::SubsetRanker ranker(H.field, sparse);
    rep.equality_witness = detail::equality_witness(H, ranker);
    return rep;
}

/// Checks that H has the indicator-row layout the structured verifier relies on.
inline void require_block_layout(const ParityCheckMatrix& H) {
    const std::size_t m = H.num_blocks, w = H.block_size;
    if (m == 0 || w == 0 || H.cols() != m * w || H.rows() != m + static_cast<std::size_t>(H.d_target - 2))
        throw Error(ErrorCode::UnknownStructure, "matrix dimensions do not match the block layout");
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t c = 0; c < H.cols(); ++c) {
            const Element want = H.block_of(c).block == i ? H.field.one() : H.field.zero();
            if (H.entries(i, c) != want)
                throw Error(ErrorCode::UnknownStructure,
                            "row " + std::to_string(i) + " is not the indicator row of block " + std::to_string(i));
        }
}

/// Pattern-by-pattern certificate for codes built by build_parity_check.
inline VerificationReport verify_distance_structured(const ParityCheckMatrix& H, const VerifyOptions& opts = {}) {
    require_block_layout(H);
    const int d = H.d_target;
    if (d != 5 && d != 6) throw Error(ErrorCode::UnknownStructure, "structured verification covers d = 5 and d = 6");
    const std::size_t m = H.num_blocks, w = H.block_size;

    // Pattern slots: within_2 .. within_(d-1), cross_2_2, cross_3_2.
    std::vector<std::string> names;
    for (int s = 2; s <= d - 1; ++s) names.push_back("within_" + std::to_string(s));
    const std::size_t cross22 = names.size();
    names.push_back("cross_2_2");
    const std::size_t cross32 = names.size();
    if (d == 6) names.push_back("cross_3_2");

    std::vector<std::size_t> offsets(w);
    for (std::size_t j = 0; j < w; ++j) offsets[j] = j;
    std::vector<std::vector<std::vector<std::size_t>>> by_size(6); // offset combinations by size
    for (std::size_t s = 2; s <= std::min<std::size_t>(5, w); ++s) by_size[s] = detail::combinations(offsets, s);

    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    pairs.reserve(m * (m - 1) / 2);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i + 1; j < m; ++j) pairs.emplace_back(i, j);

    const detail::SparseColumns sparse(H.entries);
    auto [failing, outcomes] = detail::run_units(m + pairs.size(), detail::resolve_threads(opts.threads), [&] {
        return [&, ranker = detail::SubsetRanker(H.field, sparse)](std::size_t unit, detail::UnitOutcome& out,
                                                                   const auto& cancelled) mutable {
            std::vector<std::size_t> cols;
            auto check = [&](std::size_t slot) {
                ++out.counts[slot];
                std::sort(cols.begin(), cols.end());
                if (ranker.independent(cols)) return true;
                out.failure = cols;
                return false;
            };
            if (unit < m) {
                for (int s = 2; s <= d - 1; ++s)
                    for (const auto& combo : by_size[static_cast<std::size_t>(s)]) {
                        cols.clear();
                        for (auto j : combo) cols.push_back(H.column_of(unit, j));
                        if (!check(static_cast<std::size_t>(s - 2))) return;
                    }
                return;
            }
            const auto [bi, bj] = pairs[unit - m];
            auto cross = [&](std::size_t a, std::size_t na, std::size_t b, std::size_t nb, std::size_t slot) {
                for (const auto& ca : by_size[na]) {
                    for (const auto& cb : by_size[nb]) {
                        cols.clear();
                        for (auto j : ca) cols.push_back(H.column_of(a, j));
                        for (auto j : cb) cols.push_back(H.column_of(b, j));
                        if (!check(slot)) return false;
                    }
                    if (cancelled()) return false;
                }
                return true;
            };
            if (!cross(bi, 2, bj, 2, cross22)) return;
            if (d == 6 && w >= 3) {
                if (!cross(bi, 3, bj, 2, cross32)) return;
                if (!cross(bj, 3, bi, 2, cross32)) return;
            }
        };
    });

    VerificationReport rep;
    rep.method = VerifyMethod::structured;
    rep.d_checked = d;
    detail::finish_report(rep, H.field, H.entries, failing, outcomes, names);
    detail::SubsetRanker ranker(H.field, sparse);
    rep.equality_witness = detail::equality_witness(H, ranker);
    return rep;
}

inline VerificationReport verify_distance_structured(const LrcCode& code, const VerifyOptions& opts = {}) {
    return verify_distance_structured(code.H, opts);
}

/// Spot check of `samples` random (d-1)-subsets. Never certifies a true verdict.
inline VerificationReport verify_distance_sampled(const ParityCheckMatrix& H, std::uint64_t samples,
                                                  std::uint64_t seed = 1) {
    const std::size_t n = H.cols();
    const auto s = static_cast<std::size_t>(H.d_target - 1);
    if (s > n) throw Error(ErrorCode::InvalidParameters, "fewer columns than d - 1");
    VerificationReport rep;
    rep.method = VerifyMethod::sampled;
    rep.d_checked = H.d_target;
    rep.certifying = false;
    const detail::SparseColumns sparse(H.entries);
    detail::SubsetRanker ranker(H.field, sparse);
    std::mt19937_64 rng(seed);
    std::vector<std::size_t> all(n);
    for (std::size_t i = 0; i < n; ++i) all[i] = i;
    std::uint64_t done = 0;
    rep.verdict = true;
    for (; done < samples; ++done) {
        for (std::size_t i = 0; i < s; ++i) {
            std::uniform_int_distribution<std::size_t> pick(i, n - 1);
            std::swap(all[i], all[pick(rng)]);
        }
        std::vector<std::size_t> cols(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(s));
        std::sort(cols.begin(), cols.end());
        if (!ranker.independent(cols)) {
            ++done;
            rep.verdict = false;
            rep.certificate = minimal_dependent_subset(H.field, H.entries, cols);
            break;
        }
    }
    rep.patterns["sampled_" + std::to_string(s)] = done;
    rep.checked = done;
    rep.equality_witness = detail::equality_witness(H, ranker);
    return rep;
}

/// Moore matrix of a_1..a_h over GF(base): row e holds a_i^(base^e).
inline Matrix moore_matrix(const Field& f, std::span<const Element> a, std::uint64_t base) {
    if (a.empty()) throw Error(ErrorCode::InvalidParameters, "Moore matrix needs at least one element");
    std::uint64_t v = 1;
    std::uint32_t u = 0;
    while (v < base) {
        v *= f.characteristic();
        ++u;
    }
    if (v != base || u == 0 || f.degree() % u != 0)
        throw Error(ErrorCode::InvalidParameters, "GF(" + std::to_string(base) + ") is not a subfield of " + f.name());
    for (auto x : a)
        if (!f.contains(x)) throw Error(ErrorCode::FieldMismatch, "element outside " + f.name());
    const std::size_t h = a.size();
    Matrix m(h, h);
    for (std::size_t i = 0; i < h; ++i) {
        Element x = a[i];
        for (std::size_t e = 0; e < h; ++e) {
            m(e, i) = x;
            x = f.pow(x, base);
        }
    }
    return m;
}

inline Element moore_det(const Field& f, std::span<const Element> a, std::uint64_t base) {
    return determinant(f, moore_matrix(f, a, base));
}

} // namespace lrc
