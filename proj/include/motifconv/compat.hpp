#pragma once

#include <string>
#include <vector>

namespace motifconv {

// Normalized compatibility kernels on attribute vectors. Every kernel maps
// into [0,1] and returns exactly 1 iff its two arguments are equal; the
// matcher's score guarantees depend on that property.
//
// Indicator variants treat the first attribute component as a discrete type
// id (rounded to nearest integer) and the remaining components as the
// continuous part.
enum class KernelKind { Gaussian, Indicator, IndicatorTimesGaussian };

struct KernelSpec {
  KernelKind kind = KernelKind::Gaussian;
  double scale = 1.0;  // gamma of the Gaussian factor; unused by Indicator
};

struct CompatConfig {
  KernelSpec node_kernel{KernelKind::Gaussian, 1.0};
  KernelSpec edge_kernel{KernelKind::Gaussian, 3.14};
  double alpha = 0.7;       // node-vs-edge trade-off, >= 0
  std::string preset;       // name this config was built from, "" if custom
};

double kernel_eval(const KernelSpec& k, const std::vector<double>& a,
                   const std::vector<double>& b);

double node_compat(const std::vector<double>& a, const std::vector<double>& b,
                   const CompatConfig& cfg);
double edge_compat(const std::vector<double>& r, const std::vector<double>& s,
                   const CompatConfig& cfg);

// Named presets: "synthetic" (gaussian nodes gamma=1, gaussian edges
// gamma=3.14), "molecular" (indicator nodes and edges), "qm9" (indicator
// nodes, indicator*gaussian edges gamma=2). Throws on unknown names.
CompatConfig kernel_preset(const std::string& name);

std::string kernel_kind_name(KernelKind k);
KernelKind kernel_kind_from_name(const std::string& name);

// True when the kernels and alpha agree; used to reject mixing a vocabulary
// with a differently-configured convolution run.
bool same_kernel_config(const CompatConfig& a, const CompatConfig& b);
std::string describe_kernel_config(const CompatConfig& cfg);

}  // namespace motifconv
