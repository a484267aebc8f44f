#include "motifconv/compat.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace motifconv {

namespace {

double squared_distance(const std::vector<double>& a, const std::vector<double>& b,
                        std::size_t from) {
  double d2 = 0.0;
  for (std::size_t i = from; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    d2 += d * d;
  }
  return d2;
}

bool discrete_part_equal(const std::vector<double>& a, const std::vector<double>& b) {
  return std::llround(a[0]) == std::llround(b[0]);
}

}  // namespace

double kernel_eval(const KernelSpec& k, const std::vector<double>& a,
                   const std::vector<double>& b) {
  if (a.size() != b.size())
    throw std::invalid_argument("kernel arguments have dimensions " +
                                std::to_string(a.size()) + " and " + std::to_string(b.size()));
  switch (k.kind) {
    case KernelKind::Gaussian:
      return std::exp(-k.scale * squared_distance(a, b, 0));
    case KernelKind::Indicator:
      if (a.empty()) throw std::invalid_argument("indicator kernel needs a type component");
      if (!discrete_part_equal(a, b)) return 0.0;
      // continuous remainder compared exactly: the kernel must be 1 iff equal
      return squared_distance(a, b, 1) == 0.0 ? 1.0 : 0.0;
    case KernelKind::IndicatorTimesGaussian:
      if (a.empty()) throw std::invalid_argument("indicator kernel needs a type component");
      if (!discrete_part_equal(a, b)) return 0.0;
      return std::exp(-k.scale * squared_distance(a, b, 1));
  }
  throw std::logic_error("unreachable kernel kind");
}

double node_compat(const std::vector<double>& a, const std::vector<double>& b,
                   const CompatConfig& cfg) {
  return kernel_eval(cfg.node_kernel, a, b);
}

double edge_compat(const std::vector<double>& r, const std::vector<double>& s,
                   const CompatConfig& cfg) {
  return kernel_eval(cfg.edge_kernel, r, s);
}

CompatConfig kernel_preset(const std::string& name) {
  CompatConfig cfg;
  cfg.preset = name;
  if (name == "synthetic") {
    cfg.node_kernel = {KernelKind::Gaussian, 1.0};
    cfg.edge_kernel = {KernelKind::Gaussian, 3.14};
  } else if (name == "molecular") {
    cfg.node_kernel = {KernelKind::Indicator, 0.0};
    cfg.edge_kernel = {KernelKind::Indicator, 0.0};
  } else if (name == "qm9") {
    cfg.node_kernel = {KernelKind::Indicator, 0.0};
    cfg.edge_kernel = {KernelKind::IndicatorTimesGaussian, 2.0};
  } else {
    throw std::invalid_argument("unknown kernel preset '" + name +
                                "' (expected synthetic, molecular, or qm9)");
  }
  return cfg;
}

std::string kernel_kind_name(KernelKind k) {
  switch (k) {
    case KernelKind::Gaussian: return "gaussian";
    case KernelKind::Indicator: return "indicator";
    case KernelKind::IndicatorTimesGaussian: return "indicator_times_gaussian";
  }
  throw std::logic_error("unreachable kernel kind");
}

KernelKind kernel_kind_from_name(const std::string& name) {
  if (name == "gaussian") return KernelKind::Gaussian;
  if (name == "indicator") return KernelKind::Indicator;
  if (name == "indicator_times_gaussian") return KernelKind::IndicatorTimesGaussian;
  throw std::invalid_argument("unknown kernel kind '" + name + "'");
}

bool same_kernel_config(const CompatConfig& a, const CompatConfig& b) {
  return a.node_kernel.kind == b.node_kernel.kind &&
         a.node_kernel.scale == b.node_kernel.scale &&
         a.edge_kernel.kind == b.edge_kernel.kind &&
         a.edge_kernel.scale == b.edge_kernel.scale && a.alpha == b.alpha;
}

std::string describe_kernel_config(const CompatConfig& cfg) {
  std::ostringstream os;
  os << "node=" << kernel_kind_name(cfg.node_kernel.kind) << "(" << cfg.node_kernel.scale
     << ") edge=" << kernel_kind_name(cfg.edge_kernel.kind) << "(" << cfg.edge_kernel.scale
     << ") alpha=" << cfg.alpha;
  if (!cfg.preset.empty()) os << " [" << cfg.preset << "]";
  return os.str();
}

}  // namespace motifconv
