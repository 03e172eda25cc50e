#include "randpoly/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <stdexcept>

namespace randpoly {

namespace {

// 15-point Kronrod rule with embedded 7-point Gauss rule (QUADPACK dqk15).
// Positive abscissae on [-1, 1]; even entries are Kronrod-only nodes.
constexpr double kXgk[8] = {
    0.9914553711208126392068546975263285,
    0.9491079123427585245261896840478513,
    0.8648644233597690727897127886409262,
    0.7415311855993944398638647732807884,
    0.5860872354676911302941448382587296,
    0.4058451513773971669066064120769615,
    0.2077849550078984676006894037732449,
    0.0};

constexpr double kWgk[8] = {
    0.0229353220105292249637320080589695,
    0.0630920926299785532907006631892042,
    0.1047900103222501838398763225415180,
    0.1406532597155259187451895905102379,
    0.1690047266392679028265834265985503,
    0.1903505780647854099132564024210137,
    0.2044329400752988924141619992346491,
    0.2094821410847278280129991748917143};

constexpr double kWg[4] = {
    0.1294849661688696932706114326790820,
    0.2797053914892766679014677714237796,
    0.3818300505051189449503697754889751,
    0.4179591836734693877551020408163265};

struct Panel {
  double a = 0.0;
  double b = 0.0;
  double integral = 0.0;
  double error = 0.0;
};

Panel evaluate_panel(const std::function<double(double)>& f, double a,
                     double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);

  const double fc = f(center);
  double fv1[7];
  double fv2[7];
  double resk = kWgk[7] * fc;
  double resg = kWg[3] * fc;
  double resabs = kWgk[7] * std::abs(fc);
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kXgk[j];
    fv1[j] = f(center - dx);
    fv2[j] = f(center + dx);
    const double sum = fv1[j] + fv2[j];
    resk += kWgk[j] * sum;
    resabs += kWgk[j] * (std::abs(fv1[j]) + std::abs(fv2[j]));
    if (j % 2 == 1) resg += kWg[(j - 1) / 2] * sum;
  }

  const double reskh = 0.5 * resk;
  double resasc = kWgk[7] * std::abs(fc - reskh);
  for (int j = 0; j < 7; ++j)
    resasc +=
        kWgk[j] * (std::abs(fv1[j] - reskh) + std::abs(fv2[j] - reskh));

  const double habs = std::abs(half);
  resabs *= habs;
  resasc *= habs;

  Panel p;
  p.a = a;
  p.b = b;
  p.integral = resk * half;
  double err = std::abs((resk - resg) * half);
  if (resasc != 0.0 && err != 0.0)
    err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  const double eps50 = 50.0 * std::numeric_limits<double>::epsilon();
  if (resabs > std::numeric_limits<double>::min() / eps50)
    err = std::max(eps50 * resabs, err);
  p.error = err;
  return p;
}

struct WorstFirst {
  bool operator()(const Panel& x, const Panel& y) const {
    return x.error < y.error;
  }
};

}  // namespace

QuadratureResult integrate_adaptive(const std::function<double(double)>& f,
                                    double a, double b,
                                    const QuadratureOptions& options) {
  if (!std::isfinite(a) || !std::isfinite(b) || a > b)
    throw std::invalid_argument("integrate_adaptive: bad interval");
  if (options.rel_tol < 0.0 || options.abs_tol < 0.0 ||
      (options.rel_tol == 0.0 && options.abs_tol == 0.0))
    throw std::invalid_argument("integrate_adaptive: no tolerance given");
  if (options.max_intervals < 1)
    throw std::invalid_argument("integrate_adaptive: max_intervals < 1");

  QuadratureResult result;
  if (a == b) {
    result.converged = true;
    return result;
  }

  std::vector<double> knots{a};
  for (double s : options.split_points)
    if (s > a && s < b) knots.push_back(s);
  knots.push_back(b);
  std::sort(knots.begin(), knots.end());

  std::priority_queue<Panel, std::vector<Panel>, WorstFirst> active;
  std::vector<Panel> frozen;
  double total_value = 0.0;
  double total_error = 0.0;
  int count = 0;

  auto add = [&](const Panel& p) {
    total_value += p.integral;
    total_error += p.error;
    active.push(p);
    ++count;
  };

  for (std::size_t i = 0; i + 1 < knots.size(); ++i)
    if (knots[i] < knots[i + 1])
      add(evaluate_panel(f, knots[i], knots[i + 1]));

  const double min_width =
      4.0 * std::numeric_limits<double>::epsilon() *
      std::max({std::abs(a), std::abs(b), 1.0});

  bool converged = false;
  while (true) {
    const double tol =
        std::max(options.abs_tol, options.rel_tol * std::abs(total_value));
    if (total_error <= tol) {
      converged = true;
      break;
    }
    if (count >= options.max_intervals || active.empty()) break;

    Panel worst = active.top();
    active.pop();
    if (worst.b - worst.a < min_width || worst.error == 0.0) {
      // Cannot usefully subdivide further; keep its contribution as-is.
      frozen.push_back(worst);
      continue;
    }
    const double mid = 0.5 * (worst.a + worst.b);
    const Panel left = evaluate_panel(f, worst.a, mid);
    const Panel right = evaluate_panel(f, mid, worst.b);
    total_value += left.integral + right.integral - worst.integral;
    total_error += left.error + right.error - worst.error;
    active.push(left);
    active.push(right);
    ++count;
  }

  // Re-sum in position order: removes the drift of the incremental updates
  // and makes the reported value independent of heap internals.
  std::vector<Panel> all(std::move(frozen));
  while (!active.empty()) {
    all.push_back(active.top());
    active.pop();
  }
  std::sort(all.begin(), all.end(),
            [](const Panel& x, const Panel& y) { return x.a < y.a; });
  result.value = 0.0;
  result.error_estimate = 0.0;
  for (const Panel& p : all) {
    result.value += p.integral;
    result.error_estimate += p.error;
  }
  result.intervals = static_cast<int>(all.size());
  result.converged = converged && std::isfinite(result.value);
  return result;
}

}  // namespace randpoly
