#pragma once

#include <utility>
#include <vector>

#include "spotstat/time_series.hpp"

namespace spotstat::emd {

/// Empirical mode decomposition: intrinsic mode functions ordered fastest
/// first plus the residual trend. sum(imfs) + residual reconstructs the
/// input up to floating-point rounding.
struct EmdDecomposition {
    std::vector<TimeSeries> imfs;
    TimeSeries residual;
    std::vector<int> sift_counts;
};

/// Iterative sifting: cubic-spline envelopes through the local extrema
/// (mirror-extended by two extrema at each boundary), envelope mean
/// subtracted until the Cauchy criterion
///   SD = sum((h_k - h_{k-1})^2) / sum(h_{k-1}^2) < sift_tolerance
/// or 100 sifts. Extraction stops when the remainder is monotone or has
/// fewer than 4 extrema. A monotone input yields zero IMFs.
EmdDecomposition decompose(const TimeSeries& series, int max_imfs = 32,
                           double sift_tolerance = 0.05);

/// Removes the long-term trend: trend = residual + n_slowest slowest IMFs,
/// detrended = series - trend. Throws NumericalError when the decomposition
/// yields fewer than n_slowest IMFs.
std::pair<TimeSeries, TimeSeries> detrend(const TimeSeries& series, int n_slowest = 3,
                                          double sift_tolerance = 0.05, int max_imfs = 32);

/// Indices of interior local maxima and minima. Plateaus count once, at
/// their midpoint.
struct Extrema {
    std::vector<std::size_t> maxima;
    std::vector<std::size_t> minima;
};
Extrema find_extrema(std::span<const double> x);

/// |#extrema - #zero-crossings| <= 1, the IMF criterion.
bool satisfies_imf_criterion(std::span<const double> x);

}  // namespace spotstat::emd
