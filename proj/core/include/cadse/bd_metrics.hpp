#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace cadse {

/// One operating point of a sequence encoded at a single QP.
struct RdePoint {
  int qp = 0;
  double bitrate = 0.0;  // kbit/s
  double quality = 0.0;  // VMAF, 0..100
  double energy = 0.0;   // decoding energy, J

  friend bool operator==(const RdePoint&, const RdePoint&) = default;
};

struct RdeCurve {
  std::string sequence;
  std::vector<RdePoint> points;  // descending qp

  friend bool operator==(const RdeCurve&, const RdeCurve&) = default;
};

/// Aggregated Bjøntegaard deltas in percent. Negative bdde is an energy
/// saving, positive bdr a bit rate overhead.
struct EfficiencyPoint {
  double bdr = 0.0;
  double bdde = 0.0;

  friend bool operator==(const EfficiencyPoint&, const EfficiencyPoint&) = default;
};

enum class BdAxis { rate, energy };

enum class Interpolation {
  pchip,      // monotone piecewise cubic Hermite (default)
  cubic_fit,  // global least-squares cubic, for cross-checking
};

/// Piecewise cubic Hermite interpolant with shape-preserving slopes
/// (Fritsch-Carlson harmonic weighting, three-point one-sided end slopes).
/// Knots must be strictly increasing and at least two.
class MonotoneCubic {
 public:
  MonotoneCubic(std::vector<double> x, std::vector<double> y);

  [[nodiscard]] double operator()(double at) const;
  /// Exact integral over [a, b] from the per-segment antiderivatives.
  [[nodiscard]] double integral(double a, double b) const;

  [[nodiscard]] double min_x() const noexcept { return x_.front(); }
  [[nodiscard]] double max_x() const noexcept { return x_.back(); }
  [[nodiscard]] const std::vector<double>& slopes() const noexcept { return d_; }

 private:
  [[nodiscard]] std::size_t segment(double at) const;
  [[nodiscard]] double segment_antiderivative(std::size_t k, double s) const;

  std::vector<double> x_, y_, d_;
};

/// Least-squares cubic polynomial through the samples.
class CubicFit {
 public:
  CubicFit(const std::vector<double>& x, const std::vector<double>& y);

  [[nodiscard]] double operator()(double at) const;
  [[nodiscard]] double integral(double a, double b) const;
  [[nodiscard]] double min_x() const noexcept { return min_x_; }
  [[nodiscard]] double max_x() const noexcept { return max_x_; }

 private:
  // Fitted in the centred variable (x - centre_) for conditioning.
  double centre_ = 0.0;
  double coeff_[4] = {0.0, 0.0, 0.0, 0.0};
  double min_x_ = 0.0, max_x_ = 0.0;
};

/// Checks point count, distinct QPs and strictly increasing quality with
/// decreasing QP; returns the points sorted by descending QP.
std::vector<RdePoint> validated_points(const RdeCurve& curve);

/// BD delta in percent of `test` against `anchor` on the chosen axis, with
/// log10(axis) interpolated over quality and averaged across the shared
/// quality interval.
[[nodiscard]] double bd_delta(const RdeCurve& anchor, const RdeCurve& test, BdAxis axis,
                              Interpolation mode = Interpolation::pchip);

/// Mean log10 difference (test - anchor) behind bd_delta.
[[nodiscard]] double bd_mean_log_difference(const RdeCurve& anchor, const RdeCurve& test,
                                            BdAxis axis,
                                            Interpolation mode = Interpolation::pchip);

/// Per-sequence (BDR, BDDE) for matching sequences, in anchor order.
[[nodiscard]] std::vector<EfficiencyPoint> per_sequence_efficiency(
    std::span<const RdeCurve> anchor, std::span<const RdeCurve> test,
    Interpolation mode = Interpolation::pchip);

/// Unweighted mean over sequences.
[[nodiscard]] EfficiencyPoint aggregate(std::span<const EfficiencyPoint> per_sequence);

/// Curve file format:
///
///   # comment
///   sequence <name>
///   <qp> <bitrate kbps> <vmaf> <energy J>
///   ...
///
/// Any number of sequences per file.
[[nodiscard]] std::vector<RdeCurve> read_curves(std::istream& in);
[[nodiscard]] std::vector<RdeCurve> read_curves_file(const std::string& path);
void write_curves(std::ostream& out, std::span<const RdeCurve> curves);

}  // namespace cadse
