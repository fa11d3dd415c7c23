#include "cadse/bd_metrics.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

#include <Eigen/Dense>

#include "cadse/error.hpp"

namespace cadse {

namespace {

int sign(double v) { return (v > 0.0) - (v < 0.0); }

// One-sided three-point end slope, limited so the end segment stays monotone.
double end_slope(double h0, double h1, double m0, double m1) {
  double d = ((2.0 * h0 + h1) * m0 - h0 * m1) / (h0 + h1);
  if (sign(d) != sign(m0)) {
    d = 0.0;
  } else if (sign(m0) != sign(m1) && std::abs(d) > 3.0 * std::abs(m0)) {
    d = 3.0 * m0;
  }
  return d;
}

}  // namespace

MonotoneCubic::MonotoneCubic(std::vector<double> x, std::vector<double> y)
    : x_(std::move(x)), y_(std::move(y)) {
  const std::size_t n = x_.size();
  if (n < 2 || y_.size() != n) throw_usage("interpolation needs at least two matching samples");
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (!(x_[k + 1] > x_[k])) throw_usage("interpolation knots must be strictly increasing");
  }

  std::vector<double> h(n - 1), m(n - 1);
  for (std::size_t k = 0; k + 1 < n; ++k) {
    h[k] = x_[k + 1] - x_[k];
    m[k] = (y_[k + 1] - y_[k]) / h[k];
  }

  d_.assign(n, 0.0);
  if (n == 2) {
    d_[0] = d_[1] = m[0];
    return;
  }
  for (std::size_t k = 1; k + 1 < n; ++k) {
    if (m[k - 1] * m[k] <= 0.0) continue;
    const double w1 = 2.0 * h[k] + h[k - 1];
    const double w2 = h[k] + 2.0 * h[k - 1];
    d_[k] = (w1 + w2) / (w1 / m[k - 1] + w2 / m[k]);
  }
  d_[0] = end_slope(h[0], h[1], m[0], m[1]);
  d_[n - 1] = end_slope(h[n - 2], h[n - 3], m[n - 2], m[n - 3]);
}

std::size_t MonotoneCubic::segment(double at) const {
  const auto it = std::upper_bound(x_.begin(), x_.end(), at);
  const auto idx = static_cast<std::size_t>(std::distance(x_.begin(), it));
  return std::clamp<std::size_t>(idx == 0 ? 0 : idx - 1, 0, x_.size() - 2);
}

// Antiderivative of segment k in the local variable s = x - x_k, from s = 0.
double MonotoneCubic::segment_antiderivative(std::size_t k, double s) const {
  const double h = x_[k + 1] - x_[k];
  const double delta = (y_[k + 1] - y_[k]) / h;
  const double c2 = (3.0 * delta - 2.0 * d_[k] - d_[k + 1]) / h;
  const double c3 = (d_[k] + d_[k + 1] - 2.0 * delta) / (h * h);
  return s * (y_[k] + s * (d_[k] / 2.0 + s * (c2 / 3.0 + s * c3 / 4.0)));
}

double MonotoneCubic::operator()(double at) const {
  const std::size_t k = segment(at);
  const double h = x_[k + 1] - x_[k];
  const double delta = (y_[k + 1] - y_[k]) / h;
  const double c2 = (3.0 * delta - 2.0 * d_[k] - d_[k + 1]) / h;
  const double c3 = (d_[k] + d_[k + 1] - 2.0 * delta) / (h * h);
  const double s = at - x_[k];
  return y_[k] + s * (d_[k] + s * (c2 + s * c3));
}

double MonotoneCubic::integral(double a, double b) const {
  if (b < a) return -integral(b, a);
  double total = 0.0;
  for (std::size_t k = 0; k + 1 < x_.size(); ++k) {
    const double lo = std::max(a, x_[k]);
    const double hi = std::min(b, x_[k + 1]);
    if (hi <= lo) continue;
    total += segment_antiderivative(k, hi - x_[k]) - segment_antiderivative(k, lo - x_[k]);
  }
  return total;
}

CubicFit::CubicFit(const std::vector<double>& x, const std::vector<double>& y) {
  const auto n = static_cast<Eigen::Index>(x.size());
  if (n < 4 || y.size() != x.size()) throw_usage("cubic fit needs at least four samples");
  min_x_ = *std::min_element(x.begin(), x.end());
  max_x_ = *std::max_element(x.begin(), x.end());
  centre_ = 0.5 * (min_x_ + max_x_);

  Eigen::MatrixXd vandermonde(n, 4);
  Eigen::VectorXd rhs(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double u = x[static_cast<std::size_t>(i)] - centre_;
    vandermonde(i, 0) = 1.0;
    vandermonde(i, 1) = u;
    vandermonde(i, 2) = u * u;
    vandermonde(i, 3) = u * u * u;
    rhs(i) = y[static_cast<std::size_t>(i)];
  }
  const Eigen::Vector4d c = vandermonde.colPivHouseholderQr().solve(rhs);
  for (int i = 0; i < 4; ++i) coeff_[i] = c(i);
}

double CubicFit::operator()(double at) const {
  const double u = at - centre_;
  return coeff_[0] + u * (coeff_[1] + u * (coeff_[2] + u * coeff_[3]));
}

double CubicFit::integral(double a, double b) const {
  auto anti = [this](double x) {
    const double u = x - centre_;
    return u * (coeff_[0] + u * (coeff_[1] / 2.0 + u * (coeff_[2] / 3.0 + u * coeff_[3] / 4.0)));
  };
  return anti(b) - anti(a);
}

std::vector<RdePoint> validated_points(const RdeCurve& curve) {
  const std::string where = "curve '" + curve.sequence + "'";
  if (curve.points.size() < 4) {
    throw_usage(where + " has " + std::to_string(curve.points.size()) +
                " points, at least 4 are required");
  }
  auto points = curve.points;
  std::sort(points.begin(), points.end(),
            [](const RdePoint& a, const RdePoint& b) { return a.qp > b.qp; });
  for (std::size_t k = 0; k < points.size(); ++k) {
    const auto& p = points[k];
    if (!(p.bitrate > 0.0) || !(p.energy > 0.0) || !(p.quality >= 0.0 && p.quality <= 100.0)) {
      throw_usage(where + " has an invalid point at qp " + std::to_string(p.qp));
    }
    if (k == 0) continue;
    const auto& prev = points[k - 1];
    if (prev.qp == p.qp) throw_usage(where + " repeats qp " + std::to_string(p.qp));
    if (!(p.quality > prev.quality)) {
      std::ostringstream msg;
      msg << where << ": quality not increasing between qp " << prev.qp << " (" << prev.quality
          << ") and qp " << p.qp << " (" << p.quality << ")";
      throw_usage(msg.str());
    }
  }
  return points;
}

namespace {

struct Samples {
  std::vector<double> quality;
  std::vector<double> log_value;
};

Samples samples(const RdeCurve& curve, BdAxis axis) {
  Samples s;
  for (const auto& p : validated_points(curve)) {
    s.quality.push_back(p.quality);
    s.log_value.push_back(std::log10(axis == BdAxis::rate ? p.bitrate : p.energy));
  }
  return s;
}

template <class Interpolant>
double mean_difference(const Interpolant& anchor, const Interpolant& test, const std::string& name) {
  const double lo = std::max(anchor.min_x(), test.min_x());
  const double hi = std::min(anchor.max_x(), test.max_x());
  if (!(hi > lo)) throw_usage("curves for '" + name + "' have no overlapping quality interval");
  return (test.integral(lo, hi) - anchor.integral(lo, hi)) / (hi - lo);
}

}  // namespace

double bd_mean_log_difference(const RdeCurve& anchor, const RdeCurve& test, BdAxis axis,
                              Interpolation mode) {
  auto a = samples(anchor, axis);
  auto t = samples(test, axis);
  if (mode == Interpolation::cubic_fit) {
    return mean_difference(CubicFit(a.quality, a.log_value), CubicFit(t.quality, t.log_value),
                           anchor.sequence);
  }
  return mean_difference(MonotoneCubic(std::move(a.quality), std::move(a.log_value)),
                         MonotoneCubic(std::move(t.quality), std::move(t.log_value)),
                         anchor.sequence);
}

double bd_delta(const RdeCurve& anchor, const RdeCurve& test, BdAxis axis, Interpolation mode) {
  return (std::pow(10.0, bd_mean_log_difference(anchor, test, axis, mode)) - 1.0) * 100.0;
}

std::vector<EfficiencyPoint> per_sequence_efficiency(std::span<const RdeCurve> anchor,
                                                     std::span<const RdeCurve> test,
                                                     Interpolation mode) {
  std::vector<EfficiencyPoint> out;
  out.reserve(anchor.size());
  for (const auto& a : anchor) {
    const auto it = std::find_if(test.begin(), test.end(),
                                 [&](const RdeCurve& c) { return c.sequence == a.sequence; });
    if (it == test.end()) throw_usage("no test curve for sequence '" + a.sequence + "'");
    out.push_back({bd_delta(a, *it, BdAxis::rate, mode), bd_delta(a, *it, BdAxis::energy, mode)});
  }
  return out;
}

EfficiencyPoint aggregate(std::span<const EfficiencyPoint> per_sequence) {
  if (per_sequence.empty()) throw_usage("cannot aggregate an empty list of BD values");
  EfficiencyPoint sum;
  for (const auto& p : per_sequence) {
    sum.bdr += p.bdr;
    sum.bdde += p.bdde;
  }
  const auto n = static_cast<double>(per_sequence.size());
  return {sum.bdr / n, sum.bdde / n};
}

std::vector<RdeCurve> read_curves(std::istream& in) {
  std::vector<RdeCurve> curves;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    std::string first;
    if (!(fields >> first)) continue;
    if (first == "sequence") {
      RdeCurve curve;
      if (!(fields >> curve.sequence)) {
        throw_usage("curve file line " + std::to_string(line_no) + ": missing sequence name");
      }
      curves.push_back(std::move(curve));
      continue;
    }
    if (curves.empty()) {
      throw_usage("curve file line " + std::to_string(line_no) + ": point before 'sequence'");
    }
    RdePoint p;
    std::istringstream row(line);
    std::string extra;
    if (!(row >> p.qp >> p.bitrate >> p.quality >> p.energy) || (row >> extra)) {
      throw_usage("curve file line " + std::to_string(line_no) +
                  ": expected '<qp> <bitrate> <vmaf> <energy>'");
    }
    curves.back().points.push_back(p);
  }
  return curves;
}

std::vector<RdeCurve> read_curves_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw_usage("cannot open curve file " + path);
  return read_curves(in);
}

void write_curves(std::ostream& out, std::span<const RdeCurve> curves) {
  const auto precision = out.precision(std::numeric_limits<double>::max_digits10);
  for (const auto& c : curves) {
    out << "sequence " << c.sequence << "\n";
    for (const auto& p : c.points) {
      out << p.qp << " " << p.bitrate << " " << p.quality << " " << p.energy << "\n";
    }
  }
  out.precision(precision);
}

}  // namespace cadse
