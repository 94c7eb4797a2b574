// SPDX-License-Identifier: Apache-2.0
//
// Copyright 2026 The cranmt Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Acceptance checks: one PASS/FAIL line per criterion, measured values alongside.

#include "cran/config.hpp"
#include "cran/downlink.hpp"
#include "cran/harness.hpp"
#include "cran/mmopt.hpp"
#include "cran/report.hpp"
#include "cran/uplink.hpp"
#include "instances.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <vector>

namespace {

using namespace cran;
using cran::testing::random_channel;
using cran::testing::random_complex;
using cran::testing::random_pd;
using Clock = std::chrono::steady_clock;

struct Line {
  bool pass = false;
  std::string detail;
};

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

// Every solver trace seen by the run, for the monotonicity check.
struct TraceLog {
  std::int64_t runs = 0;
  std::int64_t violations = 0;
  double worst_drop = 0.0;

  void add(const MMTrace& trace) {
    ++runs;
    const auto& obj = trace.objective_per_iteration;
    for (std::size_t i = 1; i < obj.size(); ++i) {
      const double drop = obj[i - 1] - obj[i];
      worst_drop = std::max(worst_drop, drop);
      if (drop > 1e-9) ++violations;
    }
  }

  void add(const MetricsReport& report) {
    for (const ModeMetrics& m : report.modes) {
      runs += m.stats.runs;
      violations += m.stats.monotonicity_violations;
    }
  }
};

ExperimentConfig preset(const std::string& name) { return load_config(std::string(CRAN_CONFIG_DIR) + "/" + name); }

std::string records_csv(const MetricsReport& report) {
  std::ostringstream os;
  write_records_csv(os, report);
  return os.str();
}

RVector uniform_vector(int n, double lo, double hi, Rng& rng) {
  std::uniform_real_distribution<double> u(lo, hi);
  RVector v(n);
  for (int i = 0; i < n; ++i) v(i) = u(rng);
  return v;
}

Line criterion1() {
  Rng rng(1001);
  std::uniform_int_distribution<int> nb_dist(1, 6);
  std::uniform_int_distribution<int> nm_dist(1, 5);
  double worst = 0.0;
  const auto t0 = Clock::now();
  for (int trial = 0; trial < 1000; ++trial) {
    const int nb = nb_dist(rng);
    const int nm = nm_dist(rng);
    const ChannelRealization ch = random_channel(nb, nm, rng, 2.0);
    const RVector p = ch.ms_max_power_w.cwiseProduct(uniform_vector(nm, 0.05, 1.0, rng));
    const RVector c = uniform_vector(nb, 0.1, 10.0, rng);
    std::vector<int> order(static_cast<std::size_t>(nb));
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng);
    UplinkDesign d{p, omega_closed_form(p, order, c, ch, CompressionMode::Multiterminal), order, c,
                   CompressionMode::Multiterminal};
    for (int pos = 0; pos < nb; ++pos) {
      worst = std::max(worst, std::abs(backhaul_wz(d, ch, pos) - c(order[static_cast<std::size_t>(pos)])));
    }
  }
  const double elapsed = seconds_since(t0);
  return {worst <= 1e-9 && elapsed < 10.0,
          "max |g_WZ - C| = " + fmt("%.3g", worst) + " bps/Hz, runtime " + fmt("%.2f", elapsed) + " s"};
}

Line criterion2() {
  Rng rng(1002);
  std::uniform_int_distribution<int> nb_dist(1, 6);
  std::uniform_int_distribution<int> nm_dist(1, 5);
  int omega_violations = 0;
  int rate_violations = 0;
  double min_gain = std::numeric_limits<double>::infinity();
  for (int trial = 0; trial < 1000; ++trial) {
    const int nb = nb_dist(rng);
    const int nm = nm_dist(rng);
    const ChannelRealization ch = random_channel(nb, nm, rng, 2.0);
    const RVector p = ch.ms_max_power_w.cwiseProduct(uniform_vector(nm, 0.05, 1.0, rng));
    const RVector c = uniform_vector(nb, 0.1, 10.0, rng);
    const std::vector<int> order = decompression_order(p, ch, c);
    const UplinkDesign wz{p, omega_closed_form(p, order, c, ch, CompressionMode::Multiterminal), order, c,
                          CompressionMode::Multiterminal};
    const UplinkDesign pp{p, omega_closed_form(p, order, c, ch, CompressionMode::PointToPoint), order, c,
                          CompressionMode::PointToPoint};
    for (int i = 0; i < nb; ++i) {
      if (wz.omega(i) > pp.omega(i) * (1.0 + 1e-12)) ++omega_violations;
    }
    const double gain = rates_ul(wz, ch).sum() - rates_ul(pp, ch).sum();
    min_gain = std::min(min_gain, gain);
    if (gain < -1e-12) ++rate_violations;
  }
  return {omega_violations == 0 && rate_violations == 0,
          "omega violations " + std::to_string(omega_violations) + ", sum-rate violations " +
              std::to_string(rate_violations) + ", min sum-rate gain " + fmt("%.3g", min_gain) + " bps/Hz"};
}

Line criterion3(TraceLog& log) {
  Rng rng(1003);
  std::uniform_int_distribution<int> nb_dist(1, 4);
  std::uniform_int_distribution<int> nm_dist(1, 4);
  int below = 0;
  int infeasible = 0;
  double worst_gap = std::numeric_limits<double>::infinity();
  double worst_margin = std::numeric_limits<double>::infinity();
  double mean_gain = 0.0;
  for (int trial = 0; trial < 200; ++trial) {
    const int nb = nb_dist(rng);
    const int nm = nm_dist(rng);
    const ChannelRealization ch = random_channel(nb, nm, rng, 1.5);
    const RVector c = uniform_vector(nb, 0.5, 4.0, rng);
    const RVector w = uniform_vector(nm, 0.2, 2.0, rng);
    const DownlinkResult p2p = optimize_dl(ch, c, ch.bs_max_power_w, w, CompressionMode::PointToPoint);
    const DownlinkResult mt = optimize_dl(ch, c, ch.bs_max_power_w, w, CompressionMode::Multiterminal, {}, &p2p.design);
    log.add(p2p.trace);
    log.add(mt.trace);
    const double gap = mt.objective - p2p.objective;
    worst_gap = std::min(worst_gap, gap);
    mean_gain += gap / 200.0;
    if (gap < -1e-9) ++below;
    const double margin = feasible_dl(mt.design).worst_margin;
    worst_margin = std::min(worst_margin, margin);
    if (margin < -1e-7) ++infeasible;
  }
  return {below == 0 && infeasible == 0,
          "below p2p " + std::to_string(below) + ", infeasible " + std::to_string(infeasible) + ", min gain " +
              fmt("%.3g", worst_gap) + ", mean gain " + fmt("%.4f", mean_gain) + ", min margin " +
              fmt("%.3g", worst_margin)};
}

Line criterion4() {
  Rng rng(1004);
  std::uniform_int_distribution<int> nb_dist(1, 8);
  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const int nb = nb_dist(rng);
    DownlinkDesign d;
    d.a = random_complex(nb, 3, rng);
    d.omega = CMatrix::Zero(nb, nb);
    d.omega.diagonal() = uniform_vector(nb, 0.01, 3.0, rng).cast<cplx>();
    d.capacity = RVector::Ones(nb);
    d.power_limit = RVector::Ones(nb);
    for (std::uint32_t mask = 1; mask < (1u << nb); ++mask) {
      double sum = 0.0;
      for (int i = 0; i < nb; ++i) {
        if (mask & (1u << i)) sum += backhaul_p2p_dl(d, i);
      }
      worst = std::max(worst, std::abs(backhaul_mv_dl(d, mask) - sum));
    }
  }
  return {worst <= 1e-12, "max deviation " + fmt("%.3g", worst) + " bps/Hz"};
}

// Plug-in Gaussian MI between the first block (dimension m) and the last
// coordinate of the sampled vectors.
double sampled_mi(const CMatrix& second_moment, int m) {
  return logdet2(second_moment.topLeftCorner(m, m)) + std::log2(second_moment(m, m).real()) - logdet2(second_moment);
}

Line criterion5() {
  constexpr int kSamples = 1000000;
  Rng rng(1005);
  std::uniform_int_distribution<int> dim(1, 3);
  double worst = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    // Uplink: MS 0 gets a stronger channel so that its rate is well resolved.
    const int nb = dim(rng);
    const int nm = dim(rng);
    ChannelRealization ch = random_channel(nb, nm, rng);
    ch.h_ul.col(0) *= 2.0;
    const RVector p = ch.ms_max_power_w;
    std::vector<int> order(static_cast<std::size_t>(nb));
    std::iota(order.begin(), order.end(), 0);
    const UplinkDesign d{p, uniform_vector(nb, 0.1, 1.0, rng), order, RVector::Ones(nb), CompressionMode::Multiterminal};
    CMatrix acc = CMatrix::Zero(nb + 1, nb + 1);
    CVector x(nm);
    CVector v(nb + 1);
    for (int s = 0; s < kSamples; ++s) {
      for (int k = 0; k < nm; ++k) x(k) = std::sqrt(p(k)) * complex_normal(rng);
      v.head(nb) = ch.h_ul * x;
      for (int i = 0; i < nb; ++i) {
        v(i) += std::sqrt(ch.noise_ul(i)) * complex_normal(rng) + std::sqrt(d.omega(i)) * complex_normal(rng);
      }
      v(nb) = x(0);
      acc.noalias() += v * v.adjoint();
    }
    acc /= kSamples;
    const double exact = rate_ul(d, ch, 0);
    worst = std::max(worst, std::abs(sampled_mi(acc, nb) - exact) / exact);
  }
  for (int trial = 0; trial < 20; ++trial) {
    const int nb = dim(rng);
    const int nm = dim(rng);
    const ChannelRealization ch = random_channel(nb, nm, rng);
    DownlinkDesign d;
    d.a = random_complex(nb, nm, rng, 0.6);
    d.a.col(0) *= 2.0;
    d.omega = 0.1 * random_pd(nb, rng, 0.2);
    d.capacity = RVector::Ones(nb);
    d.power_limit = RVector::Constant(nb, 100.0);
    const CMatrix lq = Eigen::LLT<CMatrix>(d.omega).matrixL();
    CMatrix acc = CMatrix::Zero(2, 2);
    CVector sym(nm);
    CVector q(nb);
    CVector v(2);
    for (int s = 0; s < kSamples; ++s) {
      for (int k = 0; k < nm; ++k) sym(k) = complex_normal(rng);
      for (int i = 0; i < nb; ++i) q(i) = complex_normal(rng);
      const CVector xt = d.a * sym + lq * q;
      v(0) = (ch.h_dl.row(0) * xt)(0) + std::sqrt(ch.noise_dl(0)) * complex_normal(rng);
      v(1) = sym(0);
      acc.noalias() += v * v.adjoint();
    }
    acc /= kSamples;
    const double exact = rate_dl(d, ch, 0);
    worst = std::max(worst, std::abs(sampled_mi(acc, 1) - exact) / exact);
  }
  return {worst <= 0.01, "max relative error " + fmt("%.4f", worst) + " over 40 instances"};
}

Line criterion6(const TraceLog& log) {
  Rng rng(1006);
  double worst_tangent = -std::numeric_limits<double>::infinity();
  double worst_fd = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 1 + trial % 5;
    const CMatrix m0 = random_pd(n, rng);
    const CMatrix m = random_pd(n, rng);
    const LogdetTangent tangent(m0);
    worst_tangent = std::max(worst_tangent, logdet2(m) - tangent(m));

    const CMatrix g = random_complex(n, n, rng);
    const CMatrix e = hermitian_part(g);
    const double h = 1e-5;
    const double fd = (logdet2(m + h * e) - logdet2(m - h * e)) / (2.0 * h);
    const double analytic = (logdet2_gradient(m) * e).trace().real();
    worst_fd = std::max(worst_fd, std::abs(fd - analytic) / std::max(std::abs(analytic), 1e-12));
  }
  return {log.violations == 0 && worst_tangent <= 1e-12 && worst_fd <= 1e-5,
          "solver runs " + std::to_string(log.runs) + ", monotonicity violations " + std::to_string(log.violations) +
              ", max tangent excess " + fmt("%.3g", worst_tangent) + ", max gradient error " + fmt("%.3g", worst_fd)};
}

Line criterion7(TraceLog& log) {
  Rng rng(1007);
  std::uniform_int_distribution<int> dim(1, 4);
  double worst_limit = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
    const ChannelRealization ch = random_channel(dim(rng), dim(rng), rng, 2.0);
    const RVector w = uniform_vector(ch.num_ms(), 0.2, 2.0, rng);
    const RVector c = RVector::Constant(ch.num_bs(), 30.0);
    for (auto mode : {CompressionMode::PointToPoint, CompressionMode::Multiterminal}) {
      const UplinkResult ul = optimize_ul(ch, c, w, mode);
      log.add(ul.trace);
      worst_limit = std::max(worst_limit, (ul.rates - ul.ideal_rates).cwiseAbs().maxCoeff());

      const DownlinkResult dl = optimize_dl(ch, c, ch.bs_max_power_w, w, mode);
      log.add(dl.trace);
      DownlinkDesign ideal = dl.design;
      ideal.omega = 1e-300 * CMatrix::Identity(ch.num_bs(), ch.num_bs());
      worst_limit = std::max(worst_limit, (dl.rates - rates_dl(ideal, ch)).cwiseAbs().maxCoeff());
    }
  }

  // Deactivation at fixed powers: quantization noise re-derived for the remaining BSs.
  int increases = 0;
  double worst_increase = 0.0;
  for (int trial = 0; trial < 200; ++trial) {
    const int nb = 1 + dim(rng);
    const ChannelRealization ch = random_channel(nb, dim(rng), rng, 2.0);
    const RVector p = ch.ms_max_power_w;
    const RVector c = uniform_vector(nb, 0.2, 6.0, rng);
    for (auto mode : {CompressionMode::PointToPoint, CompressionMode::Multiterminal}) {
      const auto order = decompression_order(p, ch, c);
      const RVector base = rates_ul({p, omega_closed_form(p, order, c, ch, mode), order, c, mode}, ch);
      for (int off = 0; off < nb; ++off) {
        RVector c2 = c;
        c2(off) = 0.0;
        const auto order2 = decompression_order(p, ch, c2);
        const RVector r = rates_ul({p, omega_closed_form(p, order2, c2, ch, mode), order2, c2, mode}, ch);
        const double inc = (r - base).maxCoeff();
        worst_increase = std::max(worst_increase, inc);
        if (inc > 1e-12) ++increases;
      }
    }
  }
  return {worst_limit <= 1e-3 && increases == 0,
          "max |rate - ideal| at C=30: " + fmt("%.3g", worst_limit) + " bps/Hz; deactivation increases " +
              std::to_string(increases) + " (max " + fmt("%.3g", worst_increase) + ")"};
}

struct TrendResult {
  Line line;
  std::string csv_n5;
};

TrendResult criterion8(TraceLog& log) {
  ExperimentConfig cfg = preset("ul_cdf.json");
  cfg.jobs = 1;
  std::vector<double> gains;
  std::string detail;
  std::string csv;
  const auto t0 = Clock::now();
  for (int n : {5, 10, 20}) {
    cfg.N = n;
    const MetricsReport r = run_experiment(cfg);
    log.add(r);
    if (n == 5) csv = records_csv(r);
    const double p2p = r.find(CompressionMode::PointToPoint)->sum_rate_p50;
    const double mt = r.find(CompressionMode::Multiterminal)->sum_rate_p50;
    gains.push_back(mt / p2p - 1.0);
    detail += "N=" + std::to_string(n) + " gain " + fmt("%.1f", 100.0 * gains.back()) + "% ";
  }
  const bool pass = gains[0] > 0.0 && gains[1] > gains[0] && gains[2] > gains[1];
  return {{pass, detail + "runtime " + fmt("%.0f", seconds_since(t0)) + " s"}, csv};
}

Line criterion9(TraceLog& log) {
  bool pass = true;
  std::string detail;
  for (const char* name : {"ul_sweep.json", "dl_sweep_body.json", "dl_sweep_caption.json"}) {
    const ExperimentConfig cfg = preset(name);
    const SweepResult sweep = alpha_sweep(cfg);
    double p2p_max = 0.0;
    double mt_max = 0.0;
    int dominated = 0;
    double worst_edge_ratio = std::numeric_limits<double>::infinity();
    std::string points_detail;
    for (const MetricsReport& r : sweep.reports) {
      log.add(r);
      const ModeMetrics* p = r.find(CompressionMode::PointToPoint);
      const ModeMetrics* m = r.find(CompressionMode::Multiterminal);
      p2p_max = std::max(p2p_max, p->average_se);
      mt_max = std::max(mt_max, m->average_se);
      if (p->cell_edge > 0.0) worst_edge_ratio = std::min(worst_edge_ratio, m->cell_edge / p->cell_edge);
      if (m->cell_edge >= p->cell_edge && m->average_se >= p->average_se) ++dominated;
      points_detail += " [a=" + fmt("%g", r.alpha) + " se " + fmt("%.3f", p->average_se) + "/" +
                       fmt("%.3f", m->average_se) + " edge " + fmt("%.3g", p->cell_edge) + "/" +
                       fmt("%.3g", m->cell_edge) + "]";
    }
    const int points = static_cast<int>(sweep.reports.size());
    const bool ok = dominated == points && p2p_max < mt_max;
    pass = pass && ok;
    detail += std::string(name) + ": dominated " + std::to_string(dominated) + "/" + std::to_string(points) +
              ", SE ceiling p2p " + fmt("%.3f", p2p_max) + " vs mt " + fmt("%.3f", mt_max) + " (x" +
              fmt("%.2f", mt_max / p2p_max) + "), min cell-edge ratio " + fmt("%.3f", worst_edge_ratio) + ", p2p/mt per alpha" +
              points_detail + "; ";
  }
  return {pass, detail};
}

Line criterion10(const std::string& reference) {
  ExperimentConfig cfg = preset("ul_cdf.json");
  cfg.N = 5;
  bool same = true;
  for (int jobs : {2, 4}) {
    cfg.jobs = jobs;
    same = same && records_csv(run_experiment(cfg)) == reference;
  }
  return {same && !reference.empty(),
          std::string(same ? "identical" : "different") + " CSV for jobs 1, 2, 4 (" +
              std::to_string(reference.size()) + " bytes)"};
}

}  // namespace

int main() {
  TraceLog log;
  std::vector<Line> lines(10);
  lines[0] = criterion1();
  lines[1] = criterion2();
  lines[2] = criterion3(log);
  lines[3] = criterion4();
  lines[4] = criterion5();
  lines[6] = criterion7(log);
  const TrendResult trend = criterion8(log);
  lines[7] = trend.line;
  lines[8] = criterion9(log);
  lines[9] = criterion10(trend.csv_n5);
  lines[5] = criterion6(log);

  int failures = 0;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    std::printf("criterion %zu: %s  %s\n", i + 1, lines[i].pass ? "PASS" : "FAIL", lines[i].detail.c_str());
    if (!lines[i].pass) ++failures;
  }
  return failures == 0 ? 0 : 1;
}
