#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "bootlab/hetero.hpp"
#include "bootlab/initializers.hpp"
#include "bootlab/product.hpp"

namespace bootlab {

inline constexpr std::uint64_t kDefaultMaxCells = std::uint64_t{1} << 27;

struct EstimateRecord {
    std::string experiment;
    std::optional<int> theta, ell;
    std::optional<double> a;
    std::optional<long long> n, L;
    std::string rule, mode, boundary;
    std::uint64_t trials = 0;
    std::uint64_t successes = 0;
    double estimate = 0.0;
    double standardError = 0.0;
    std::uint64_t seed = 0;

    void set_counts(std::uint64_t trialCount, std::uint64_t successCount);
    friend bool operator==(const EstimateRecord&, const EstimateRecord&) = default;
};

struct ResourceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void check_cells(std::uint64_t cells, std::uint64_t cap);

// Theta = 2*ell + 2 (even) or 2*ell + 1 (odd).
int ell_for_theta(int theta);
// Density a (log n)^{1/ell} / n^{1+1/ell} for even theta, a / n^{1+1/ell} for odd.
double scaled_density(int theta, double a, double n);

enum class EventKind {
    PlaneIS,
    PlaneII,
    PlaneInert,
    OriginPlaneFull,
    OriginPointOccupied,
    HeteroOriginZero,
    ZeroClusterDiameter,
};

struct EventSpec {
    EventKind kind = EventKind::PlaneIS;
    int r = 0;
    int diameter = 0;
    bool complement = false;
};

// Names such as "plane-is", "not-plane-is", "origin-plane-full", "zero-cluster".
EventSpec parse_event(std::string_view name, int r = 0, int diameter = 0);
std::string event_name(const EventSpec& e);

enum class FieldSource { Polluted, UpperRemapped };

struct McParams {
    int theta = 4;
    int ell = 0;  // 0: derived from theta
    double a = 1.0;
    int n = 10;
    int L = 1;
    std::optional<double> p;  // overrides the scaling in (theta, a, n)
    Boundary boundary = Boundary::EmptyWall;
    Fiber fiber = Fiber::HammingSquare;
    LimitVariant variant = LimitVariant::XiAeps;
    double eps = 0.0;
    FieldSource field = FieldSource::Polluted;
    double pollutedP = 0.0, pollutedQ = 0.0;
    std::uint64_t maxCells = kDefaultMaxCells;
};

EstimateRecord mc_probability(const EventSpec& event, const McParams& params, std::uint64_t trials,
                              std::uint64_t seed);

enum class OracleKind {
    EvenNotIsMinus1,  // not (2l-1)-IS, even theta
    EvenNotIs2l,      // not 2l-IS
    EvenIsPlus1,      // (2l+1)-IS
    EvenIsPlus2,      // (2l+2)-IS
    OddNotIsMinus1,   // not (2l-1)-IS, odd theta
    OddIs2l,          // 2l-IS
    OddNotIIPlus1,    // not (2l+1)-II
    OddIsPlus1,       // (2l+1)-IS
    Theta4TwoInert,   // lower bound on 2-inertness at theta = 4
};

OracleKind parse_oracle(std::string_view name);
double oracle_formula(OracleKind kind, double n, double a, int ell);

enum class DensityMode { LowerIS, UpperInert, Direct };
enum class LabelSampling { Auto, Exact, Tabulated };

std::string to_string(DensityMode m);
DensityMode parse_density_mode(std::string_view text);

struct DensityParams {
    int theta = 4;
    double a = 1.0;
    int n = 10;
    int L = 8;
    DensityMode mode = DensityMode::LowerIS;
    Boundary boundary = Boundary::EmptyWall;
    LabelSampling sampling = LabelSampling::Auto;
    std::uint64_t planeTrials = 10000;
    std::uint64_t maxCells = kDefaultMaxCells;
};

EstimateRecord two_scale_density(const DensityParams& params, std::uint64_t trials, std::uint64_t seed);

// Lower, direct and upper estimates from the same initial states in every
// trial, with the number of trials where the pathwise order failed.
struct CoupledDensity {
    EstimateRecord lower, direct, upper;
    std::uint64_t orderViolations = 0;
};
CoupledDensity coupled_density(const DensityParams& params, std::uint64_t trials, std::uint64_t seed);

// Empty-wall and zero-wall brackets from the same Poisson draws.
std::pair<EstimateRecord, EstimateRecord> phi_estimate(double a, int theta, int L, std::uint64_t trials,
                                                       std::uint64_t seed);

struct AcScanParams {
    int ell = 2;
    std::vector<double> epsList;
    std::vector<double> aGrid;
    int L = 64;
    std::uint64_t trials = 100;
    std::uint64_t seed = 1;
    double threshold = 0.05;
    LimitVariant variant = LimitVariant::XiAeps;
    Boundary boundary = Boundary::EmptyWall;
};

struct AcScanResult {
    std::vector<EstimateRecord> records;  // eps-major, then a in grid order
    std::optional<double> crossing;       // on the smallest-eps curve
    double threshold = 0.05;
    double smallestEps = 0.0;
};

AcScanResult ac_scan(const AcScanParams& params);

struct RateFit {
    std::vector<std::pair<double, double>> points;
    double exponent = 0.0;
    double prefactor = 0.0;
    std::vector<double> residuals;
};

RateFit rate_fit(const std::vector<std::pair<double, double>>& points);

struct SandwichReport {
    bool ok = true;
    std::optional<Site> firstViolation;
    std::string detail;
};

SandwichReport sandwich_check(const ProductConfig& cfg);

}  // namespace bootlab
