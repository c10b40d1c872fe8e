// SPDX-License-Identifier: Apache-2.0
#include "afdm/baselines.hpp"

#include <gsl/gsl_errno.h>
#include <gsl/gsl_multimin.h>

#include <algorithm>
#include <cmath>
#include <memory>

namespace afdm {

std::string_view to_string(BaselineKind kind) {
  switch (kind) {
    case BaselineKind::IntegerOnly:
      return "integer-only";
    case BaselineKind::TwoDSearch:
      return "two-d-search";
  }
  return "unknown";
}

Estimate integer_only(const DaftFrame& y, const AfdmGrid& g) {
  const IntegerEstimate ie = integer_estimate(y, g);
  Estimate e;
  e.l_hat = ie.l_hat;
  e.k_hat = ie.k_hat;
  e.m_peak = ie.m_peak;
  e.flagged = ie.flagged;
  e.pspr = pspr(y, ie.m_peak, g);
  return e;
}

namespace {

std::vector<int> model_rows(const AfdmGrid& g) {
  const PilotRegion reg = pilot_region(g);
  const int c = g.segments();
  std::vector<int> rows;
  for (int p = reg.first - c / 2; p <= reg.last + (c + 1) / 2; ++p) rows.push_back(row_of_tap(g, p));
  return rows;
}

struct Problem {
  const DaftFrame* y;
  const AfdmGrid* g;
  std::vector<int> rows;
  CVec observed;
  mutable CVec column;
};

EnvelopeParams split(double delay, double doppler) {
  EnvelopeParams p;
  p.l = static_cast<int>(std::floor(delay));
  p.iota = delay - p.l;
  p.k = static_cast<int>(std::floor(doppler));
  p.kappa = doppler - p.k;
  return p;
}

double evaluate(const Problem& pb, double delay, double doppler) {
  const AfdmGrid& g = *pb.g;
  exact_f_column(g, split(delay, doppler), 0, pb.rows, pb.column);
  const DaftTables& t = g.tables();
  Complex acc{};
  double energy = 0.0;
  for (std::size_t i = 0; i < pb.rows.size(); ++i) {
    const Complex model = std::conj(t.index_chirp[pb.rows[i]]) * pb.column[i];
    acc += std::conj(pb.observed[i]) * model;
    energy += std::norm(model);
  }
  return energy > 0.0 ? std::abs(acc) / std::sqrt(energy) : 0.0;
}

Problem make_problem(const DaftFrame& y, const AfdmGrid& g) {
  Problem pb{&y, &g, model_rows(g), {}, {}};
  pb.observed.reserve(pb.rows.size());
  for (int r : pb.rows) pb.observed.push_back(y.symbols[r]);
  pb.column.resize(pb.rows.size());
  return pb;
}

struct Box {
  double l_max;
  double k_max;
  double delay(double v) const { return std::clamp(v, 0.0, l_max); }
  double doppler(double v) const { return std::clamp(v, -k_max, k_max); }
};

struct Context {
  const Problem* pb;
  Box box;
};

double negated(const gsl_vector* v, void* params) {
  const auto* ctx = static_cast<const Context*>(params);
  return -evaluate(*ctx->pb, ctx->box.delay(gsl_vector_get(v, 0)), ctx->box.doppler(gsl_vector_get(v, 1)));
}

}  // namespace

double two_d_objective(const DaftFrame& y, const AfdmGrid& g, double delay, double doppler) {
  return evaluate(make_problem(y, g), delay, doppler);
}

TwoDResult two_d_search(const DaftFrame& y, const AfdmGrid& g, const IntegerEstimate& init) {
  static const bool quiet = (gsl_set_error_handler_off(), true);
  (void)quiet;
  const Problem pb = make_problem(y, g);
  Context ctx{&pb, {static_cast<double>(g.l_max()), static_cast<double>(g.k_max())}};

  gsl_multimin_function fn{&negated, 2, &ctx};
  using VecPtr = std::unique_ptr<gsl_vector, decltype(&gsl_vector_free)>;
  VecPtr x(gsl_vector_alloc(2), &gsl_vector_free);
  VecPtr steps(gsl_vector_alloc(2), &gsl_vector_free);
  gsl_vector_set(x.get(), 0, ctx.box.delay(init.l_hat));
  gsl_vector_set(x.get(), 1, ctx.box.doppler(init.k_hat));
  gsl_vector_set_all(steps.get(), 0.5);

  std::unique_ptr<gsl_multimin_fminimizer, decltype(&gsl_multimin_fminimizer_free)> s(
      gsl_multimin_fminimizer_alloc(gsl_multimin_fminimizer_nmsimplex2, 2), &gsl_multimin_fminimizer_free);
  gsl_multimin_fminimizer_set(s.get(), &fn, x.get(), steps.get());

  TwoDResult out;
  int status = GSL_CONTINUE;
  while (status == GSL_CONTINUE && out.iterations < 200) {
    ++out.iterations;
    if (gsl_multimin_fminimizer_iterate(s.get()) != GSL_SUCCESS) break;
    status = gsl_multimin_test_size(gsl_multimin_fminimizer_size(s.get()), 1e-3);
  }
  out.converged = status == GSL_SUCCESS;
  out.delay = ctx.box.delay(gsl_vector_get(s->x, 0));
  out.doppler = ctx.box.doppler(gsl_vector_get(s->x, 1));
  out.objective = -s->fval;
  return out;
}

Estimate two_d_estimate(const DaftFrame& y, const AfdmGrid& g) {
  const IntegerEstimate ie = integer_estimate(y, g);
  const TwoDResult r = two_d_search(y, g, ie);
  Estimate e;
  e.l_hat = static_cast<int>(std::floor(r.delay));
  e.iota_hat = r.delay - e.l_hat;
  e.k_hat = static_cast<int>(std::floor(r.doppler));
  e.kappa_hat = r.doppler - e.k_hat;
  e.m_peak = ie.m_peak;
  e.pspr = pspr(y, ie.m_peak, g);
  e.flagged = ie.flagged || !r.converged;
  return e;
}

}  // namespace afdm
