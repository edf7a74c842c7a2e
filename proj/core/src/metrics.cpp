#include "lfc/metrics.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>

#include "lfc/error.hpp"

namespace lfc {

double psnr(const Plane& a, const Plane& b, int bit_depth) {
  check(a.width == b.width && a.height == b.height, ErrorCode::DimensionMismatch, "psnr: plane sizes differ");
  check(!a.samples.empty(), ErrorCode::TooSmall, "psnr: empty plane");
  std::uint64_t sse = 0;
  for (std::size_t i = 0; i < a.samples.size(); ++i) {
    const std::int64_t d = static_cast<std::int64_t>(a.samples[i]) - b.samples[i];
    sse += static_cast<std::uint64_t>(d * d);
  }
  if (sse == 0) return kPsnrCap;
  const double max = static_cast<double>((1 << bit_depth) - 1);
  const double mse = static_cast<double>(sse) / static_cast<double>(a.samples.size());
  return std::min(kPsnrCap, 10.0 * std::log10(max * max / mse));
}

namespace {

constexpr int kSsimRadius = 5;

std::array<double, 2 * kSsimRadius + 1> gaussian_window() {
  std::array<double, 2 * kSsimRadius + 1> w{};
  double sum = 0.0;
  for (int i = -kSsimRadius; i <= kSsimRadius; ++i) {
    w[static_cast<std::size_t>(i + kSsimRadius)] = std::exp(-0.5 * i * i / (1.5 * 1.5));
    sum += w[static_cast<std::size_t>(i + kSsimRadius)];
  }
  for (auto& v : w) v /= sum;
  return w;
}

/// Weighted local means of `src` for every window fully inside the image.
std::vector<double> filter_valid(const std::vector<double>& src, int w, int h) {
  static const auto win = gaussian_window();
  const int ow = w - 2 * kSsimRadius, oh = h - 2 * kSsimRadius;
  std::vector<double> rows(static_cast<std::size_t>(ow) * h);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < ow; ++x) {
      double s = 0.0;
      for (int k = 0; k < 2 * kSsimRadius + 1; ++k) s += win[static_cast<std::size_t>(k)] * src[static_cast<std::size_t>(y) * w + x + k];
      rows[static_cast<std::size_t>(y) * ow + x] = s;
    }
  }
  std::vector<double> out(static_cast<std::size_t>(ow) * oh);
  for (int y = 0; y < oh; ++y) {
    for (int x = 0; x < ow; ++x) {
      double s = 0.0;
      for (int k = 0; k < 2 * kSsimRadius + 1; ++k) s += win[static_cast<std::size_t>(k)] * rows[static_cast<std::size_t>(y + k) * ow + x];
      out[static_cast<std::size_t>(y) * ow + x] = s;
    }
  }
  return out;
}

}  // namespace

double ssim(const Plane& a, const Plane& b, int bit_depth) {
  check(a.width == b.width && a.height == b.height, ErrorCode::DimensionMismatch, "ssim: plane sizes differ");
  check(a.width >= 2 * kSsimRadius + 1 && a.height >= 2 * kSsimRadius + 1, ErrorCode::TooSmall,
        "ssim needs at least 11x11 samples");
  const int w = a.width, h = a.height;
  const std::size_t n = a.samples.size();
  std::vector<double> x(n), y(n), xx(n), yy(n), xy(n);
  for (std::size_t i = 0; i < n; ++i) {
    x[i] = a.samples[i];
    y[i] = b.samples[i];
    xx[i] = x[i] * x[i];
    yy[i] = y[i] * y[i];
    xy[i] = x[i] * y[i];
  }
  const auto mx = filter_valid(x, w, h), my = filter_valid(y, w, h);
  const auto mxx = filter_valid(xx, w, h), myy = filter_valid(yy, w, h), mxy = filter_valid(xy, w, h);
  const double range = static_cast<double>((1 << bit_depth) - 1);
  const double c1 = (0.01 * range) * (0.01 * range);
  const double c2 = (0.03 * range) * (0.03 * range);
  double sum = 0.0;
  for (std::size_t i = 0; i < mx.size(); ++i) {
    const double vx = mxx[i] - mx[i] * mx[i];
    const double vy = myy[i] - my[i] * my[i];
    const double cov = mxy[i] - mx[i] * my[i];
    sum += ((2 * mx[i] * my[i] + c1) * (2 * cov + c2)) / ((mx[i] * mx[i] + my[i] * my[i] + c1) * (vx + vy + c2));
  }
  return sum / static_cast<double>(mx.size());
}

namespace {

/// Cubic least-squares fit on a centred, scaled abscissa.
struct Cubic {
  double centre = 0.0;
  double scale = 1.0;
  Eigen::Vector4d coef = Eigen::Vector4d::Zero();

  /// Integral of the fitted polynomial over [lo, hi] in the original variable.
  double integral(double lo, double hi) const {
    const auto prim = [&](double v) {
      const double t = (v - centre) / scale;
      return scale * (coef[0] * t + coef[1] * t * t / 2 + coef[2] * t * t * t / 3 + coef[3] * t * t * t * t / 4);
    };
    return prim(hi) - prim(lo);
  }
};

Cubic fit_cubic(const std::vector<double>& xs, const std::vector<double>& ys) {
  check(xs.size() >= 4, ErrorCode::DegenerateFit, "bd metrics need at least four points per curve");
  Cubic c;
  const auto [mn, mx] = std::minmax_element(xs.begin(), xs.end());
  c.centre = 0.5 * (*mn + *mx);
  c.scale = 0.5 * (*mx - *mn);
  check(c.scale > 0.0, ErrorCode::DegenerateFit, "bd metrics: all points share one abscissa");
  Eigen::MatrixXd a(static_cast<Eigen::Index>(xs.size()), 4);
  Eigen::VectorXd b(static_cast<Eigen::Index>(xs.size()));
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double t = (xs[i] - c.centre) / c.scale;
    const auto r = static_cast<Eigen::Index>(i);
    a(r, 0) = 1.0;
    a(r, 1) = t;
    a(r, 2) = t * t;
    a(r, 3) = t * t * t;
    b(r) = ys[i];
  }
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(a);
  qr.setThreshold(1e-10);
  check(qr.rank() == 4, ErrorCode::DegenerateFit, "bd metrics: points do not determine a cubic");
  c.coef = qr.solve(b);
  return c;
}

struct LogCurve {
  std::vector<double> log_rate;
  std::vector<double> psnr;
};

LogCurve to_log(const RdCurve& curve) {
  LogCurve out;
  for (const RdPoint& p : curve) {
    check(p.bpp > 0.0, ErrorCode::DegenerateFit, "bd metrics need positive rates");
    out.log_rate.push_back(std::log10(p.bpp));
    out.psnr.push_back(p.psnr_y);
  }
  return out;
}

/// Mean of (test - anchor) over the overlap of the two abscissa ranges.
double mean_difference(const std::vector<double>& x_test, const std::vector<double>& y_test,
                       const std::vector<double>& x_anchor, const std::vector<double>& y_anchor) {
  const Cubic ft = fit_cubic(x_test, y_test);
  const Cubic fa = fit_cubic(x_anchor, y_anchor);
  const double lo = std::max(*std::min_element(x_test.begin(), x_test.end()),
                             *std::min_element(x_anchor.begin(), x_anchor.end()));
  const double hi = std::min(*std::max_element(x_test.begin(), x_test.end()),
                             *std::max_element(x_anchor.begin(), x_anchor.end()));
  check(hi > lo, ErrorCode::NoOverlap, "bd metrics: curves do not overlap");
  return (ft.integral(lo, hi) - fa.integral(lo, hi)) / (hi - lo);
}

}  // namespace

double bd_psnr(const RdCurve& test, const RdCurve& anchor) {
  const LogCurve t = to_log(test), a = to_log(anchor);
  return mean_difference(t.log_rate, t.psnr, a.log_rate, a.psnr);
}

double bd_rate(const RdCurve& test, const RdCurve& anchor) {
  const LogCurve t = to_log(test), a = to_log(anchor);
  const double d = mean_difference(t.psnr, t.log_rate, a.psnr, a.log_rate);
  return (std::pow(10.0, d) - 1.0) * 100.0;
}

BdResult bd_metrics(const RdCurve& test, const RdCurve& anchor) {
  return {bd_rate(test, anchor), bd_psnr(test, anchor)};
}

GridQuality grid_quality(const ViewGrid& reference, const ViewGrid& test) {
  check(reference.rows() == test.rows() && reference.cols() == test.cols(), ErrorCode::DimensionMismatch,
        "grid shapes differ");
  GridQuality q;
  for (std::size_t i = 0; i < reference.size(); ++i) {
    const Picture& r = reference.views()[i];
    const Picture& t = test.views()[i];
    q.psnr_y += psnr(r.luma(), t.luma(), r.bit_depth);
    q.ssim_y += ssim(r.luma(), t.luma(), r.bit_depth);
  }
  q.psnr_y /= static_cast<double>(reference.size());
  q.ssim_y /= static_cast<double>(reference.size());
  return q;
}

GridPos SimilarityMap::argmax() const {
  const auto it = std::max_element(values.begin(), values.end());
  const auto i = static_cast<int>(it - values.begin());
  return {i / cols, i % cols};
}

SimilarityMap similarity_map(const ViewGrid& grid) {
  check(grid.size() >= 2, ErrorCode::TooSmall, "similarity map needs at least two views");
  const std::size_t n = grid.size();
  std::vector<double> pair(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double p = psnr(grid.views()[i].luma(), grid.views()[j].luma(), grid.bit_depth());
      pair[i * n + j] = p;
      pair[j * n + i] = p;
    }
  }
  SimilarityMap map{grid.rows(), grid.cols(), std::vector<double>(n, 0.0)};
  for (std::size_t i = 0; i < n; ++i) {
    double sum = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      if (j != i) sum += pair[i * n + j];
    }
    map.values[i] = sum / static_cast<double>(n - 1);
  }
  return map;
}

void write_rd_csv(std::ostream& os, const RdCurve& curve) {
  os << "bpp,psnr_y,ssim_y\n";
  os.precision(10);
  for (const RdPoint& p : curve) os << p.bpp << ',' << p.psnr_y << ',' << p.ssim_y << '\n';
}

RdCurve read_rd_csv(std::istream& is) {
  RdCurve curve;
  std::string line;
  bool header = true;
  while (std::getline(is, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (header) {
      header = false;
      if (line.rfind("bpp", 0) == 0) continue;
    }
    std::istringstream ss(line);
    RdPoint p;
    char c1 = 0, c2 = 0;
    if (!(ss >> p.bpp >> c1 >> p.psnr_y)) fail(ErrorCode::Io, "bad RD csv line: " + line);
    if (!(ss >> c2 >> p.ssim_y)) p.ssim_y = 0.0;
    curve.push_back(p);
  }
  return curve;
}

void write_similarity_csv(std::ostream& os, const SimilarityMap& map) {
  os << "row,col,avg_psnr_db\n";
  os.precision(10);
  for (int r = 0; r < map.rows; ++r) {
    for (int c = 0; c < map.cols; ++c) os << r << ',' << c << ',' << map.at(r, c) << '\n';
  }
}

}  // namespace lfc
