#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "bootlab/rng.hpp"

namespace bootlab {

class PlaneConfig {
public:
    PlaneConfig() = default;
    explicit PlaneConfig(int n);

    int n() const { return n_; }
    bool occupied(int u, int v) const { return occ_[idx(u, v)] != 0; }
    // Returns true when the cell was vacant.
    bool set(int u, int v);
    int row_count(int u) const { return rowCount_[u]; }
    int col_count(int v) const { return colCount_[v]; }
    std::uint64_t occupied_count() const { return total_; }
    bool full() const { return total_ == static_cast<std::uint64_t>(n_) * n_; }
    const std::vector<std::uint8_t>& cells() const { return occ_; }
    std::vector<std::uint32_t> occupied_cells() const;

    friend bool operator==(const PlaneConfig& a, const PlaneConfig& b) { return a.n_ == b.n_ && a.occ_ == b.occ_; }

private:
    std::size_t idx(int u, int v) const { return static_cast<std::size_t>(u) * n_ + v; }
    int n_ = 0;
    std::vector<std::uint8_t> occ_;
    std::vector<int> rowCount_, colCount_;
    std::uint64_t total_ = 0;
};

class CliqueConfig {
public:
    CliqueConfig() = default;
    explicit CliqueConfig(int n) : n_(n), occ_(static_cast<std::size_t>(n), 0) {}

    int n() const { return n_; }
    bool occupied(int u) const { return occ_[u] != 0; }
    bool set(int u);
    int count() const { return count_; }

private:
    int n_ = 0;
    std::vector<std::uint8_t> occ_;
    int count_ = 0;
};

struct PlaneFlags {
    int threshold = 0;
    bool isIS = false;
    bool isII = false;
};

// Cell lists use the flat index u*n + v.
std::vector<std::uint32_t> sample_plane_cells(int n, double p, Rng& rng);
PlaneConfig sample_plane(int n, double p, Rng& rng);
CliqueConfig sample_clique(int n, double p, Rng& rng);

PlaneConfig plane_fixpoint(const PlaneConfig& cfg, int r);
PlaneFlags plane_flags(const PlaneConfig& cfg, int r);

// One synchronous step of the restricted threshold-r dynamics, by direct
// recount. Slow; used as a reference.
PlaneConfig plane_step(const PlaneConfig& cfg, int r);

// Unrestricted one-step inertness of a plane given as sorted unique cell lists.
// Each neighbor list adds one to the count of every cell it contains and every
// cell receives `extra` (occupied planes beyond a wall). Cost is
// O(k log k) in the number of listed cells, independent of n.
bool sparse_plane_inert(int n, std::span<const std::uint32_t> self,
                        std::span<const std::vector<std::uint32_t>* const> neighbors, int extra, int r);

// Reusable workspace for the restricted dynamics on one Kn x Kn plane.
// Memory is one bit per cell plus O(n); a run costs O(initial + flips) apart
// from the row and column fills, which are linear in n each.
class PlaneEngine {
public:
    explicit PlaneEngine(int n);

    int n() const { return n_; }

    struct Outcome {
        bool spanned = false;  // r-IS
        bool inert = false;    // r-II
    };

    // Cells may repeat; repeats are ignored.
    Outcome run(std::span<const std::uint32_t> cells, int r);

    // Final occupancy of the last run.
    bool occupied(std::uint32_t cell) const;
    std::uint64_t occupied_count() const;

private:
    void reset();
    void mark_and_push(std::uint32_t cell);
    void bump_row(int u);
    void bump_col(int v);
    void bucket_move(std::vector<std::vector<int>>& buckets, std::vector<int>& pos, int line, int from, int to);

    int n_;
    int r_ = 1;
    std::vector<std::uint64_t> bits_;
    std::vector<std::uint32_t> queue_;
    std::vector<int> rowCnt_, colCnt_;
    std::vector<int> rowPos_, colPos_;
    std::vector<std::uint8_t> rowFilled_, colFilled_;
    std::vector<std::vector<int>> rowBuckets_, colBuckets_;
    std::vector<int> touchedRows_, touchedCols_;
    int filledRows_ = 0, filledCols_ = 0;
    bool full_ = false;
    std::uint64_t marked_ = 0;
};

}  // namespace bootlab
