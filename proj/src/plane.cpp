#include "bootlab/plane.hpp"

#include <algorithm>
#include <stdexcept>

namespace bootlab {

PlaneConfig::PlaneConfig(int n) : n_(n) {
    if (n < 1) throw std::invalid_argument("plane side n must be at least 1");
    occ_.assign(static_cast<std::size_t>(n) * n, 0);
    rowCount_.assign(n, 0);
    colCount_.assign(n, 0);
}

bool PlaneConfig::set(int u, int v) {
    auto& c = occ_[idx(u, v)];
    if (c) return false;
    c = 1;
    ++rowCount_[u];
    ++colCount_[v];
    ++total_;
    return true;
}

std::vector<std::uint32_t> PlaneConfig::occupied_cells() const {
    std::vector<std::uint32_t> out;
    out.reserve(total_);
    for (std::size_t i = 0; i < occ_.size(); ++i)
        if (occ_[i]) out.push_back(static_cast<std::uint32_t>(i));
    return out;
}

bool CliqueConfig::set(int u) {
    if (occ_[u]) return false;
    occ_[u] = 1;
    ++count_;
    return true;
}

namespace {
void check_density(int n, double p) {
    if (n < 1) throw std::invalid_argument("n must be at least 1");
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("density p must lie in [0,1]");
}
}  // namespace

std::vector<std::uint32_t> sample_plane_cells(int n, double p, Rng& rng) {
    check_density(n, p);
    if (static_cast<std::uint64_t>(n) * n > 0xffffffffULL) throw std::invalid_argument("plane too large");
    std::vector<std::uint32_t> cells;
    for_each_bernoulli(static_cast<std::uint64_t>(n) * n, p, rng,
                       [&](std::uint64_t i) { cells.push_back(static_cast<std::uint32_t>(i)); });
    return cells;
}

PlaneConfig sample_plane(int n, double p, Rng& rng) {
    PlaneConfig cfg(n);
    for (auto c : sample_plane_cells(n, p, rng)) cfg.set(static_cast<int>(c / n), static_cast<int>(c % n));
    return cfg;
}

CliqueConfig sample_clique(int n, double p, Rng& rng) {
    check_density(n, p);
    CliqueConfig cfg(n);
    for_each_bernoulli(static_cast<std::uint64_t>(n), p, rng, [&](std::uint64_t i) { cfg.set(static_cast<int>(i)); });
    return cfg;
}

PlaneConfig plane_fixpoint(const PlaneConfig& cfg, int r) {
    const int n = cfg.n();
    PlaneEngine engine(n);
    auto cells = cfg.occupied_cells();
    engine.run(cells, r);
    PlaneConfig out(n);
    for (int u = 0; u < n; ++u)
        for (int v = 0; v < n; ++v)
            if (engine.occupied(static_cast<std::uint32_t>(u) * n + v)) out.set(u, v);
    return out;
}

PlaneFlags plane_flags(const PlaneConfig& cfg, int r) {
    PlaneEngine engine(cfg.n());
    auto cells = cfg.occupied_cells();
    auto res = engine.run(cells, r);
    return {r, res.spanned, res.inert};
}

PlaneConfig plane_step(const PlaneConfig& cfg, int r) {
    const int n = cfg.n();
    PlaneConfig out = cfg;
    for (int u = 0; u < n; ++u)
        for (int v = 0; v < n; ++v)
            if (!cfg.occupied(u, v) && cfg.row_count(u) + cfg.col_count(v) >= r) out.set(u, v);
    return out;
}

PlaneEngine::PlaneEngine(int n) : n_(n) {
    if (n < 1) throw std::invalid_argument("plane side n must be at least 1");
    const std::uint64_t cells = static_cast<std::uint64_t>(n) * n;
    if (cells > 0xffffffffULL) throw std::invalid_argument("plane too large for the engine");
    bits_.assign((cells + 63) / 64, 0);
    rowCnt_.assign(n, 0);
    colCnt_.assign(n, 0);
    rowPos_.assign(n, -1);
    colPos_.assign(n, -1);
    rowFilled_.assign(n, 0);
    colFilled_.assign(n, 0);
}

void PlaneEngine::reset() {
    if (queue_.size() > bits_.size() * 4) {
        std::fill(bits_.begin(), bits_.end(), 0);
    } else {
        for (auto c : queue_) bits_[c >> 6] = 0;
    }
    for (int u : touchedRows_) {
        rowCnt_[u] = 0;
        rowPos_[u] = -1;
        rowFilled_[u] = 0;
    }
    for (int v : touchedCols_) {
        colCnt_[v] = 0;
        colPos_[v] = -1;
        colFilled_[v] = 0;
    }
    for (auto& b : rowBuckets_) b.clear();
    for (auto& b : colBuckets_) b.clear();
    touchedRows_.clear();
    touchedCols_.clear();
    queue_.clear();
    filledRows_ = filledCols_ = 0;
    full_ = false;
    marked_ = 0;
}

void PlaneEngine::mark_and_push(std::uint32_t cell) {
    auto& word = bits_[cell >> 6];
    const std::uint64_t bit = std::uint64_t{1} << (cell & 63);
    if (word & bit) return;
    word |= bit;
    ++marked_;
    queue_.push_back(cell);
}

void PlaneEngine::bucket_move(std::vector<std::vector<int>>& buckets, std::vector<int>& pos, int line, int from,
                              int to) {
    if (from >= 1 && from < r_) {
        auto& b = buckets[from];
        const int p = pos[line];
        const int last = b.back();
        b[p] = last;
        pos[last] = p;
        b.pop_back();
        pos[line] = -1;
    }
    if (to >= 1 && to < r_) {
        pos[line] = static_cast<int>(buckets[to].size());
        buckets[to].push_back(line);
    }
}

void PlaneEngine::bump_row(int u) {
    const int c = ++rowCnt_[u];
    if (c == 1) touchedRows_.push_back(u);
    bucket_move(rowBuckets_, rowPos_, u, c - 1, c);
    const std::uint32_t base = static_cast<std::uint32_t>(u) * n_;
    if (c >= r_) {
        if (!rowFilled_[u]) {
            rowFilled_[u] = 1;
            ++filledRows_;
            for (int v = 0; v < n_; ++v) mark_and_push(base + v);
        }
    } else {
        for (int v : colBuckets_[r_ - c]) mark_and_push(base + v);
    }
}

void PlaneEngine::bump_col(int v) {
    const int c = ++colCnt_[v];
    if (c == 1) touchedCols_.push_back(v);
    bucket_move(colBuckets_, colPos_, v, c - 1, c);
    if (c >= r_) {
        if (!colFilled_[v]) {
            colFilled_[v] = 1;
            ++filledCols_;
            for (int u = 0; u < n_; ++u) mark_and_push(static_cast<std::uint32_t>(u) * n_ + v);
        }
    } else {
        for (int u : rowBuckets_[r_ - c]) mark_and_push(static_cast<std::uint32_t>(u) * n_ + v);
    }
}

PlaneEngine::Outcome PlaneEngine::run(std::span<const std::uint32_t> cells, int r) {
    reset();
    const std::uint64_t total = static_cast<std::uint64_t>(n_) * n_;
    for (auto c : cells)
        if (c >= total) throw std::out_of_range("cell index outside the plane");
    if (r <= 0) {
        // Threshold 0 occupies every vacant cell at once.
        for (auto c : cells) mark_and_push(c);
        Outcome out{true, marked_ == total};
        full_ = true;
        return out;
    }
    r_ = r;
    if (static_cast<int>(rowBuckets_.size()) < r) {
        rowBuckets_.resize(r);
        colBuckets_.resize(r);
    }
    for (auto c : cells) mark_and_push(c);
    const std::size_t initial = queue_.size();
    for (std::size_t i = 0; i < initial; ++i) {
        bump_row(static_cast<int>(queue_[i] / n_));
        bump_col(static_cast<int>(queue_[i] % n_));
    }
    Outcome out;
    out.inert = queue_.size() == initial;
    std::size_t head = initial;
    while (head < queue_.size()) {
        // r filled rows give every column r occupied cells, so the plane fills.
        if (filledRows_ >= r_ || filledCols_ >= r_) {
            full_ = true;
            break;
        }
        const std::uint32_t c = queue_[head++];
        bump_row(static_cast<int>(c / n_));
        bump_col(static_cast<int>(c % n_));
    }
    out.spanned = full_ || marked_ == total;
    if (out.spanned) full_ = true;
    return out;
}

bool PlaneEngine::occupied(std::uint32_t cell) const {
    if (full_) return true;
    return (bits_[cell >> 6] >> (cell & 63)) & 1;
}

std::uint64_t PlaneEngine::occupied_count() const {
    return full_ ? static_cast<std::uint64_t>(n_) * n_ : marked_;
}

}  // namespace bootlab

namespace bootlab {

bool sparse_plane_inert(int n, std::span<const std::uint32_t> self,
                        std::span<const std::vector<std::uint32_t>* const> neighbors, int extra, int r) {
    const std::uint64_t total = static_cast<std::uint64_t>(n) * n;
    if (self.size() == total) return true;
    const int need = r - extra;
    if (need <= 0) return false;

    std::vector<std::pair<int, int>> rows, cols;  // (count, line)
    {
        std::vector<int> us, vs;
        us.reserve(self.size());
        vs.reserve(self.size());
        for (auto c : self) {
            us.push_back(static_cast<int>(c / n));
            vs.push_back(static_cast<int>(c % n));
        }
        auto tally = [](std::vector<int>& xs, std::vector<std::pair<int, int>>& out) {
            std::sort(xs.begin(), xs.end());
            for (std::size_t i = 0; i < xs.size();) {
                std::size_t j = i;
                while (j < xs.size() && xs[j] == xs[i]) ++j;
                out.emplace_back(static_cast<int>(j - i), xs[i]);
                i = j;
            }
        };
        tally(us, rows);
        tally(vs, cols);
    }
    auto is_occ = [&](std::uint32_t c) { return std::binary_search(self.begin(), self.end(), c); };
    auto count_of = [](const std::vector<std::pair<int, int>>& lines, int line) {
        auto it = std::lower_bound(lines.begin(), lines.end(), line,
                                   [](const std::pair<int, int>& a, int b) { return a.second < b; });
        return (it != lines.end() && it->second == line) ? it->first : 0;
    };
    // rows/cols are sorted by line index here; keep copies for lookups.
    const auto rowsByLine = rows;
    const auto colsByLine = cols;

    std::vector<std::uint32_t> helped;
    for (const auto* nb : neighbors)
        if (nb) helped.insert(helped.end(), nb->begin(), nb->end());
    std::sort(helped.begin(), helped.end());
    for (std::size_t i = 0; i < helped.size();) {
        std::size_t j = i;
        while (j < helped.size() && helped[j] == helped[i]) ++j;
        const std::uint32_t c = helped[i];
        if (!is_occ(c)) {
            const int u = static_cast<int>(c / n), v = static_cast<int>(c % n);
            if (count_of(rowsByLine, u) + count_of(colsByLine, v) + static_cast<int>(j - i) >= need) return false;
        }
        i = j;
    }

    // Best vacant cell by row plus column count alone.
    std::sort(rows.begin(), rows.end(), std::greater<>());
    std::sort(cols.begin(), cols.end(), std::greater<>());
    const bool emptyColExists = cols.size() < static_cast<std::size_t>(n);
    const bool emptyRowExists = rows.size() < static_cast<std::size_t>(n);
    int best = (emptyColExists && emptyRowExists) ? 0 : -1;
    if (emptyColExists && !rows.empty()) best = std::max(best, rows.front().first);
    if (emptyRowExists && !cols.empty()) best = std::max(best, cols.front().first);
    for (const auto& [rc, u] : rows) {
        if (rc + (cols.empty() ? 0 : cols.front().first) <= best) break;
        for (const auto& [cc, v] : cols) {
            if (rc + cc <= best) break;
            if (!is_occ(static_cast<std::uint32_t>(u) * n + v)) {
                best = rc + cc;
                break;
            }
        }
    }
    return best < need;
}

}  // namespace bootlab
