#include "debond/model.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

namespace debond {

using nlohmann::json;

namespace {

Error invalid(const std::string& pointer, const std::string& message) {
  return Error(ErrorKind::validation, message, pointer);
}

double number_at(const json& obj, const std::string& key, const std::string& base) {
  const std::string ptr = base + "/" + key;
  if (!obj.contains(key)) throw invalid(ptr, "missing required number");
  const json& v = obj.at(key);
  if (!v.is_number()) throw invalid(ptr, "expected a number");
  double x = v.get<double>();
  if (!std::isfinite(x)) throw invalid(ptr, "expected a finite number");
  return x;
}

double number_or(const json& obj, const std::string& key, const std::string& base, double fallback) {
  if (!obj.contains(key)) return fallback;
  return number_at(obj, key, base);
}

std::vector<double> array_at(const json& obj, const std::string& key, const std::string& base) {
  const std::string ptr = base + "/" + key;
  if (!obj.contains(key)) throw invalid(ptr, "missing required array");
  const json& v = obj.at(key);
  if (!v.is_array()) throw invalid(ptr, "expected an array of numbers");
  std::vector<double> out;
  out.reserve(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!v[i].is_number()) throw invalid(ptr + "/" + std::to_string(i), "expected a number");
    out.push_back(v[i].get<double>());
  }
  return out;
}

std::string kind_at(const json& obj, const std::string& base) {
  if (!obj.is_object()) throw invalid(base, "expected an object");
  if (!obj.contains("kind") || !obj.at("kind").is_string())
    throw invalid(base + "/kind", "missing string field 'kind'");
  return obj.at("kind").get<std::string>();
}

void check_table(const std::vector<double>& x, const std::vector<double>& y, const std::string& base,
                 const std::string& xkey, const std::string& ykey) {
  if (x.size() < 2) throw invalid(base + "/" + xkey, "need at least two nodes");
  if (x.size() != y.size()) throw invalid(base + "/" + ykey, "length differs from " + xkey);
  for (std::size_t i = 1; i < x.size(); ++i)
    if (!(x[i] > x[i - 1]))
      throw invalid(base + "/" + xkey + "/" + std::to_string(i), "nodes must be strictly increasing");
}

}  // namespace

// ---------------------------------------------------------------------------
// PiecewiseLinear

PiecewiseLinear::PiecewiseLinear(std::vector<double> x, std::vector<double> y)
    : x_(std::move(x)), y_(std::move(y)) {
  if (x_.size() != y_.size() || x_.empty())
    throw Error(ErrorKind::validation, "piecewise-linear table needs matching non-empty arrays");
  cumulative_.assign(x_.size(), 0.0);
  for (std::size_t i = 1; i < x_.size(); ++i)
    cumulative_[i] = cumulative_[i - 1] + 0.5 * (y_[i] + y_[i - 1]) * (x_[i] - x_[i - 1]);
}

std::size_t PiecewiseLinear::cell(double x) const {
  auto it = std::upper_bound(x_.begin(), x_.end(), x);
  std::size_t i = static_cast<std::size_t>(it - x_.begin());
  if (i == 0) return 0;
  return std::min(i - 1, x_.size() - 2);
}

double PiecewiseLinear::operator()(double x) const {
  if (x_.size() == 1 || x <= x_.front()) return y_.front();
  if (x >= x_.back()) return y_.back();
  std::size_t i = cell(x);
  double a = (x - x_[i]) / (x_[i + 1] - x_[i]);
  return y_[i] + a * (y_[i + 1] - y_[i]);
}

double PiecewiseLinear::slope(double x) const {
  if (x_.size() == 1) return 0.0;
  if (x < x_.front() || x > x_.back()) return 0.0;
  std::size_t i = cell(x);
  return (y_[i + 1] - y_[i]) / (x_[i + 1] - x_[i]);
}

double PiecewiseLinear::integral_to(double b) const {
  if (b <= x_.front()) return (b - x_.front()) * y_.front();
  if (b >= x_.back()) return cumulative_.back() + (b - x_.back()) * y_.back();
  std::size_t i = cell(b);
  double yb = (*this)(b);
  return cumulative_[i] + 0.5 * (y_[i] + yb) * (b - x_[i]);
}

// ---------------------------------------------------------------------------
// SimParams

void SimParams::validate() const {
  if (!(epsilon > 0)) throw invalid("/epsilon", "epsilon must be positive");
  if (!(nu >= 0)) throw invalid("/nu", "nu must be non-negative");
  if (!(ell0 > 0)) throw invalid("/ell0", "ell0 must be positive");
  if (!(t_end > 0)) throw invalid("/t_end", "t_end must be positive");
  if (!(ds > 0)) throw invalid("/ds", "ds must be positive");
  if (ds > epsilon * ell0 / 8 * (1 + 1e-12))
    throw invalid("/ds", "ds must not exceed epsilon*ell0/8");
  if (!(x_max > ell0)) throw invalid("/x_max", "x_max must exceed ell0");
}

// ---------------------------------------------------------------------------
// Toughness

Toughness Toughness::constant(double kappa0) {
  Toughness k;
  k.kind_ = Kind::constant;
  k.a_ = kappa0;
  return k;
}

Toughness Toughness::affine(double a, double b) {
  Toughness k;
  k.kind_ = Kind::affine;
  k.a_ = a;
  k.b_ = b;
  return k;
}

Toughness Toughness::power(double c, double p) {
  Toughness k;
  k.kind_ = Kind::power;
  k.a_ = c;
  k.b_ = p;
  return k;
}

Toughness Toughness::sampled(std::vector<double> x, std::vector<double> kappa) {
  Toughness k;
  k.kind_ = Kind::sampled;
  k.table_ = PiecewiseLinear(std::move(x), std::move(kappa));
  return k;
}

double Toughness::raw(double x) const {
  switch (kind_) {
    case Kind::constant: return a_;
    case Kind::affine: return a_ + b_ * x;
    case Kind::power: return a_ * std::pow(x, b_);
    case Kind::sampled: return table_(x);
  }
  return 0.0;
}

double Toughness::raw_antiderivative(double x) const {
  switch (kind_) {
    case Kind::constant: return a_ * x;
    case Kind::affine: return a_ * x + 0.5 * b_ * x * x;
    case Kind::power:
      if (b_ == -1.0) return a_ * std::log(x);
      return a_ * std::pow(x, b_ + 1.0) / (b_ + 1.0);
    case Kind::sampled: return table_.integral_to(x);
  }
  return 0.0;
}

void Toughness::bind_domain(double ell0, double x_max) {
  ell0_ = ell0;
  x_max_ = x_max;
  auto fail = [](const std::string& msg) { return invalid("/toughness", msg); };
  switch (kind_) {
    case Kind::constant:
      if (!(a_ > 0)) throw invalid("/toughness/kappa0", "kappa0 must be positive");
      break;
    case Kind::affine:
      if (!(raw(ell0) > 0 && raw(x_max) > 0)) throw fail("affine toughness must be positive on [ell0, x_max]");
      break;
    case Kind::power:
      if (!(a_ > 0)) throw invalid("/toughness/c", "power toughness coefficient must be positive");
      break;
    case Kind::sampled:
      for (std::size_t i = 0; i < table_.values().size(); ++i)
        if (!(table_.values()[i] > 0)) throw invalid("/toughness/kappa/" + std::to_string(i), "toughness samples must be positive");
      break;
  }
  phi_increasing_checked_ = true;
  phi_increasing_ = strictly_increasing_phi();
}

double Toughness::operator()(double x) const {
  const double slack = 1e-12 * std::max(1.0, x_max_);
  if (x < ell0_ - slack || x > x_max_ + slack)
    throw Error(ErrorKind::range, "toughness evaluated outside [ell0, x_max] at x=" + std::to_string(x));
  return raw(x);
}

double Toughness::integral(double a, double b) const {
  (void)(*this)(a);
  (void)(*this)(b);
  return raw_antiderivative(b) - raw_antiderivative(a);
}

double Toughness::phi(double x) const { return x * x * (*this)(x); }

double Toughness::dphi(double x) const {
  double k = (*this)(x);
  double dk = 0.0;
  switch (kind_) {
    case Kind::constant: dk = 0.0; break;
    case Kind::affine: dk = b_; break;
    case Kind::power: dk = a_ * b_ * std::pow(x, b_ - 1.0); break;
    case Kind::sampled: dk = table_.slope(x); break;
  }
  return 2.0 * x * k + x * x * dk;
}

bool Toughness::strictly_increasing_phi() const {
  switch (kind_) {
    case Kind::constant: return true;
    case Kind::affine: return b_ >= 0 && 2 * a_ + 3 * b_ * ell0_ >= 0;
    case Kind::power: return b_ > -2.0;
    case Kind::sampled: {
      // phi' = x (2 alpha + 3 beta x) on a cell where kappa = alpha + beta x, so
      // sign checks at cell ends are exact.
      std::vector<double> pts{ell0_, x_max_};
      for (double xn : table_.nodes())
        if (xn > ell0_ && xn < x_max_) pts.push_back(xn);
      std::sort(pts.begin(), pts.end());
      for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        double lo = pts[i], hi = pts[i + 1];
        double mid = 0.5 * (lo + hi);
        double beta = table_.slope(mid);
        double alpha = table_(mid) - beta * mid;
        double g_lo = 2 * alpha + 3 * beta * lo;
        double g_hi = 2 * alpha + 3 * beta * hi;
        if (g_lo < 0 || g_hi < 0 || (g_lo == 0 && g_hi == 0)) return false;
      }
      return true;
    }
  }
  return false;
}

double Toughness::phi_inv(double y) const {
  if (!phi_increasing_checked_ || !phi_increasing_)
    throw Error(ErrorKind::monotonicity, "phi_kappa is not strictly increasing (K2 fails)");
  double lo = ell0_, hi = x_max_;
  double plo = phi(lo), phi_hi = phi(hi);
  const double tol = 1e-14 * std::max(1.0, std::abs(phi_hi));
  if (y < plo - tol || y > phi_hi + tol)
    throw Error(ErrorKind::range, "phi_kappa inverse requested outside [phi(ell0), phi(x_max)]");
  if (y <= plo) return lo;
  if (y >= phi_hi) return hi;
  // Bisection down to adjacent doubles.
  for (int it = 0; it < 200; ++it) {
    double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (phi(mid) < y)
      lo = mid;
    else
      hi = mid;
  }
  return (phi(hi) - y <= y - phi(lo)) ? hi : lo;
}

ConditionFlags Toughness::conditions(const Loading& w, double horizon, double grid_step) const {
  return conditions_from(w, horizon, grid_step, ell0_);
}

ConditionFlags Toughness::conditions_from(const Loading& w, double horizon, double grid_step,
                                          double start) const {
  ConditionFlags f;
  double lim_phi = 0.0;  // limit of phi at infinity, +inf when divergent
  const double inf = std::numeric_limits<double>::infinity();
  switch (kind_) {
    case Kind::constant:
      f.K0 = f.K1 = f.K2 = f.K3 = true;
      lim_phi = inf;
      break;
    case Kind::affine:
      f.K0 = b_ >= 0;
      f.K1 = b_ >= 0 && 2 * a_ + 3 * b_ * ell0_ >= 0;
      f.K2 = f.K1;
      f.K3 = f.K2;
      lim_phi = b_ >= 0 ? inf : -inf;
      break;
    case Kind::power:
      f.K0 = b_ >= -1.0;
      f.K1 = b_ >= -2.0;
      f.K2 = b_ > -2.0;
      f.K3 = f.K2;
      lim_phi = b_ > -2.0 ? inf : (b_ == -2.0 ? a_ : 0.0);
      break;
    case Kind::sampled: {
      // Tail beyond the last sample is constant, so kappa is never integrable.
      f.K0 = true;
      bool nondecr = true, strict = true, positive_rate = true;
      double step = grid_step > 0 ? grid_step : (x_max_ - ell0_) / 4096;
      double prev_x = ell0_, prev = phi(ell0_);
      for (double x = ell0_ + step;; x += step) {
        double xx = std::min(x, x_max_);
        double cur = phi(xx);
        double dq = (cur - prev) / (xx - prev_x);
        if (cur < prev) nondecr = false;
        if (!(cur > prev)) strict = false;
        if (!(dq > 1e-12)) positive_rate = false;
        prev = cur;
        prev_x = xx;
        if (xx >= x_max_) break;
      }
      f.K1 = nondecr;
      f.K2 = strict;
      f.K3 = strict && positive_rate;
      lim_phi = inf;
      break;
    }
  }
  double half_max = 0.5 * w.max_square(horizon, grid_step > 0 ? grid_step : horizon / 4096);
  double w0 = w(0.0);
  // Relative slack so a start taken from phi_inv(w(0)^2 / 2) passes after roundoff.
  f.KW = lim_phi > half_max && phi(start) >= 0.5 * w0 * w0 * (1 - 1e-12);
  return f;
}

json Toughness::to_json() const {
  switch (kind_) {
    case Kind::constant: return {{"kind", "constant"}, {"kappa0", a_}};
    case Kind::affine: return {{"kind", "affine"}, {"a", a_}, {"b", b_}};
    case Kind::power: return {{"kind", "power"}, {"c", a_}, {"p", b_}};
    case Kind::sampled: return {{"kind", "sampled"}, {"x", table_.nodes()}, {"kappa", table_.values()}};
  }
  return {};
}

// ---------------------------------------------------------------------------
// Loading

Loading Loading::constant(double value) {
  Loading w;
  w.kind_ = Kind::constant;
  w.c_ = {value};
  return w;
}

Loading Loading::ramp(double from, double to, double t0, double t1) {
  Loading w;
  w.kind_ = Kind::ramp;
  w.c_ = {from, to, t0, t1};
  return w;
}

Loading Loading::polynomial(std::vector<double> coeffs) {
  Loading w;
  w.kind_ = Kind::polynomial;
  w.c_ = std::move(coeffs);
  if (w.c_.empty()) w.c_ = {0.0};
  return w;
}

Loading Loading::sinusoid(double offset, double amplitude, double omega, double phase) {
  Loading w;
  w.kind_ = Kind::sinusoid;
  w.c_ = {offset, amplitude, omega, phase};
  return w;
}

Loading Loading::sampled(std::vector<double> t, std::vector<double> values) {
  Loading w;
  w.kind_ = Kind::sampled;
  w.table_ = PiecewiseLinear(std::move(t), std::move(values));
  return w;
}

double Loading::operator()(double t) const {
  switch (kind_) {
    case Kind::constant: return c_[0];
    case Kind::ramp: {
      if (t <= c_[2]) return c_[0];
      if (t >= c_[3]) return c_[1];
      return c_[0] + (c_[1] - c_[0]) * (t - c_[2]) / (c_[3] - c_[2]);
    }
    case Kind::polynomial: {
      double acc = 0.0;
      for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * t + *it;
      return acc;
    }
    case Kind::sinusoid: return c_[0] + c_[1] * std::sin(c_[2] * t + c_[3]);
    case Kind::sampled: return table_(t);
  }
  return 0.0;
}

double Loading::derivative(double t) const {
  switch (kind_) {
    case Kind::constant: return 0.0;
    case Kind::ramp:
      if (t < c_[2] || t > c_[3]) return 0.0;
      return (c_[1] - c_[0]) / (c_[3] - c_[2]);
    case Kind::polynomial: {
      double acc = 0.0;
      for (std::size_t k = c_.size(); k-- > 1;) acc = acc * t + static_cast<double>(k) * c_[k];
      return acc;
    }
    case Kind::sinusoid: return c_[1] * c_[2] * std::cos(c_[2] * t + c_[3]);
    case Kind::sampled: return table_.slope(t);
  }
  return 0.0;
}

double Loading::max_square(double horizon, double step) const {
  std::vector<double> pts;
  for (double t = 0.0; t < horizon; t += step) pts.push_back(t);
  pts.push_back(horizon);
  if (kind_ == Kind::ramp) {
    pts.push_back(std::clamp(c_[2], 0.0, horizon));
    pts.push_back(std::clamp(c_[3], 0.0, horizon));
  }
  if (kind_ == Kind::sampled)
    for (double t : table_.nodes())
      if (t >= 0 && t <= horizon) pts.push_back(t);
  if (kind_ == Kind::sinusoid && c_[2] != 0.0) {
    // Extrema of sin(omega t + phase).
    const double pi = std::acos(-1.0);
    double om = std::abs(c_[2]);
    double period = 2 * pi / om;
    double first = (pi / 2 - c_[3]) / c_[2];
    double shift = std::floor(first / (period / 2));
    for (double t = first - shift * (period / 2); t <= horizon; t += period / 2)
      if (t >= 0) pts.push_back(t);
  }
  double m = 0.0;
  for (double t : pts) m = std::max(m, (*this)(t) * (*this)(t));
  return m;
}

json Loading::to_json() const {
  switch (kind_) {
    case Kind::constant: return {{"kind", "constant"}, {"value", c_[0]}};
    case Kind::ramp: return {{"kind", "ramp"}, {"from", c_[0]}, {"to", c_[1]}, {"t0", c_[2]}, {"t1", c_[3]}};
    case Kind::polynomial: return {{"kind", "polynomial"}, {"coeffs", c_}};
    case Kind::sinusoid:
      return {{"kind", "sinusoid"}, {"offset", c_[0]}, {"amplitude", c_[1]}, {"omega", c_[2]}, {"phase", c_[3]}};
    case Kind::sampled: return {{"kind", "sampled"}, {"t", table_.nodes()}, {"w", table_.values()}};
  }
  return {};
}

// ---------------------------------------------------------------------------
// InitialData

InitialData::InitialData(PiecewiseLinear u0, PiecewiseLinear u1, double ell0)
    : u0_(std::move(u0)), u1_(std::move(u1)), ell0_(ell0) {}

InitialData InitialData::equilibrium(double w0, double ell0) {
  return InitialData(PiecewiseLinear({0.0, ell0}, {w0, 0.0}), PiecewiseLinear({0.0, ell0}, {0.0, 0.0}), ell0);
}

void InitialData::check_compatibility(const Loading& w) const {
  if (u0_(0.0) != w(0.0)) throw invalid("/u0", "compatibility violated: u0(0) must equal w(0)");
  if (u0_(ell0_) != 0.0) throw invalid("/u0", "compatibility violated: u0(ell0) must be 0");
}

bool InitialData::first_order_compatible(const Loading& w, double tol) const {
  return std::abs(u1_(0.0) - w.derivative(0.0)) <= tol;
}

// ---------------------------------------------------------------------------
// Problem parsing

Problem Problem::with_epsilon(double epsilon, double ds) const {
  Problem p = *this;
  p.params.epsilon = epsilon;
  p.params.ds = ds;
  p.params.validate();
  return p;
}

namespace {

Toughness parse_toughness(const json& obj) {
  const std::string base = "/toughness";
  std::string kind = kind_at(obj, base);
  if (kind == "constant") return Toughness::constant(number_at(obj, "kappa0", base));
  if (kind == "affine") return Toughness::affine(number_at(obj, "a", base), number_at(obj, "b", base));
  if (kind == "power") return Toughness::power(number_at(obj, "c", base), number_at(obj, "p", base));
  if (kind == "sampled") {
    auto x = array_at(obj, "x", base);
    auto k = array_at(obj, "kappa", base);
    check_table(x, k, base, "x", "kappa");
    return Toughness::sampled(std::move(x), std::move(k));
  }
  throw invalid(base + "/kind", "unknown toughness kind '" + kind + "'");
}

Loading parse_loading(const json& obj) {
  const std::string base = "/loading";
  std::string kind = kind_at(obj, base);
  if (kind == "constant") return Loading::constant(number_at(obj, "value", base));
  if (kind == "ramp") {
    double t0 = number_or(obj, "t0", base, 0.0);
    double t1 = number_at(obj, "t1", base);
    if (!(t1 > t0)) throw invalid(base + "/t1", "ramp end must be after its start");
    if (t0 < 0) throw invalid(base + "/t0", "ramp start must be non-negative");
    return Loading::ramp(number_at(obj, "from", base), number_at(obj, "to", base), t0, t1);
  }
  if (kind == "polynomial") return Loading::polynomial(array_at(obj, "coeffs", base));
  if (kind == "sinusoid")
    return Loading::sinusoid(number_or(obj, "offset", base, 0.0), number_at(obj, "amplitude", base),
                             number_at(obj, "omega", base), number_or(obj, "phase", base, 0.0));
  if (kind == "sampled") {
    auto t = array_at(obj, "t", base);
    auto w = array_at(obj, "w", base);
    check_table(t, w, base, "t", "w");
    if (t.front() != 0.0) throw invalid(base + "/t/0", "sampled loading must start at t=0");
    return Loading::sampled(std::move(t), std::move(w));
  }
  throw invalid(base + "/kind", "unknown loading kind '" + kind + "'");
}

PiecewiseLinear parse_profile(const json& obj, const std::string& base, const std::string& ykey, double ell0) {
  auto x = array_at(obj, "x", base);
  auto y = array_at(obj, ykey, base);
  check_table(x, y, base, "x", ykey);
  if (x.front() != 0.0) throw invalid(base + "/x/0", "profile must start at x=0");
  if (x.back() != ell0) throw invalid(base + "/x/" + std::to_string(x.size() - 1), "profile must end at x=ell0");
  return PiecewiseLinear(std::move(x), std::move(y));
}

}  // namespace

Problem parse_problem(const json& doc) {
  if (!doc.is_object()) throw invalid("", "problem document must be a JSON object");
  Problem p;
  p.params.epsilon = number_at(doc, "epsilon", "");
  p.params.nu = number_at(doc, "nu", "");
  p.params.ell0 = number_at(doc, "ell0", "");
  p.params.t_end = number_at(doc, "t_end", "");
  p.params.ds = number_at(doc, "ds", "");
  p.params.x_max = number_or(doc, "x_max", "", 64.0 * p.params.ell0);
  p.params.validate();

  if (!doc.contains("toughness")) throw invalid("/toughness", "missing toughness object");
  p.toughness = parse_toughness(doc.at("toughness"));
  p.toughness.bind_domain(p.params.ell0, p.params.x_max);

  if (!doc.contains("loading")) throw invalid("/loading", "missing loading object");
  p.loading = parse_loading(doc.at("loading"));

  const double ell0 = p.params.ell0;
  PiecewiseLinear u0, u1;
  if (!doc.contains("u0")) throw invalid("/u0", "missing u0 object");
  {
    const json& obj = doc.at("u0");
    std::string kind = kind_at(obj, "/u0");
    if (kind == "affine")
      u0 = PiecewiseLinear({0.0, ell0}, {p.loading(0.0), 0.0});
    else if (kind == "sampled")
      u0 = parse_profile(obj, "/u0", "u", ell0);
    else
      throw invalid("/u0/kind", "unknown u0 kind '" + kind + "'");
  }
  if (!doc.contains("u1")) throw invalid("/u1", "missing u1 object");
  {
    const json& obj = doc.at("u1");
    std::string kind = kind_at(obj, "/u1");
    if (kind == "zero")
      u1 = PiecewiseLinear({0.0, ell0}, {0.0, 0.0});
    else if (kind == "constant") {
      double c = number_at(obj, "value", "/u1");
      u1 = PiecewiseLinear({0.0, ell0}, {c, c});
    } else if (kind == "sampled")
      u1 = parse_profile(obj, "/u1", "v", ell0);
    else
      throw invalid("/u1/kind", "unknown u1 kind '" + kind + "'");
  }
  p.init = InitialData(std::move(u0), std::move(u1), ell0);
  p.init.check_compatibility(p.loading);
  p.source = doc;
  return p;
}

Problem load_problem_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::io, "cannot open config file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  json doc;
  try {
    doc = json::parse(buf.str());
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::validation, std::string("malformed JSON: ") + e.what(), "");
  }
  return parse_problem(doc);
}

std::vector<double> running_max_w_squared(const Loading& w, const std::vector<double>& grid) {
  std::vector<double> out(grid.size());
  double m = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < grid.size(); ++i) {
    double v = w(grid[i]);
    m = std::max(m, v * v);
    out[i] = m;
  }
  return out;
}

}  // namespace debond
