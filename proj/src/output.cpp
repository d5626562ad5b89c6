#include "kinwave/output.hpp"

#include <cmath>
#include <cstdio>

#include <json.hpp>

#include "kinwave/errors.hpp"

namespace kinwave {

using nlohmann::json;

std::string format_number(double z) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", z);
  return buf;
}

namespace {

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ValidationError("cannot write '" + path.string() + "'");
  return out;
}

// JSON has no NaN; missing measurements become null.
json number(double z) { return std::isfinite(z) ? json(z) : json(nullptr); }

json check(const BtCheck& c) { return {{"value", number(c.value)}, {"bound", number(c.bound)}, {"pass", c.pass}}; }

json bt(const BtAudit& a) {
  return {{"H1_initial", check(a.h1_initial)}, {"H1", check(a.h1)},
          {"H2", check(a.h2)},                 {"H3", check(a.h3)},
          {"H4", check(a.h4)},                 {"H4_printed", check(a.h4_printed)},
          {"pass", a.passes()}};
}

void dump(const std::filesystem::path& path, const json& j) {
  auto out = open_out(path);
  out << j.dump(2) << "\n";
}

}  // namespace

void prepare_output_directory(const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec || !std::filesystem::is_directory(dir))
    throw ValidationError("cannot create output directory '" + dir.string() + "'");
  const auto probe = dir / ".write_probe";
  {
    std::ofstream p(probe);
    if (!p) throw ValidationError("output directory '" + dir.string() + "' is not writable");
  }
  std::filesystem::remove(probe, ec);
}

SnapshotWriter::SnapshotWriter(const std::filesystem::path& dir, int every, int last_step,
                               bool write_f)
    : dir_(dir), every_(every), last_(last_step), write_f_(write_f),
      fields_(open_out(dir / "fields.csv")), moments_(open_out(dir / "moments.csv")) {
  fields_ << "t,x,A,dtA,dxA,B_plus,B_minus\n";
  moments_ << "t,x,rho,j\n";
}

void SnapshotWriter::operator()(const SimulationState& s) {
  const bool due = s.step == last_ || (every_ > 0 && s.step % every_ == 0);
  if (!due) return;
  const std::string t = format_number(s.time());
  const auto& f = s.fields;
  for (int i = 0; i < s.grid.x_nodes(); ++i) {
    const std::string x = format_number(s.grid.x(i));
    fields_ << t << ',' << x << ',' << format_number(f.a[i]) << ',' << format_number(f.dt_a(i))
            << ',' << format_number(f.dx_a(i)) << ',' << format_number(f.b_plus[i]) << ','
            << format_number(f.b_minus[i]) << '\n';
    moments_ << t << ',' << x << ',' << format_number(s.moments.rho[i]) << ','
             << format_number(s.moments.j[i]) << '\n';
  }
  if (write_f_ && every_ > 0)
    write_f_csv(dir_ / ("f_" + std::to_string(s.step) + ".csv"), s);
}

void write_f_csv(const std::filesystem::path& path, const SimulationState& s) {
  auto out = open_out(path);
  out << "x,v,f\n";
  for (int i = 0; i < s.grid.x_nodes(); ++i) {
    const std::string x = format_number(s.grid.x(i));
    for (int k = 0; k < s.grid.v_nodes(); ++k)
      out << x << ',' << format_number(s.grid.v(k)) << ','
          << format_number(s.distribution.values(i, k)) << '\n';
  }
}

void write_diagnostics_csv(const std::filesystem::path& path,
                           const std::vector<DiagnosticsRecord>& series) {
  auto out = open_out(path);
  out << "t,mass,kinetic,field,total,p_of_t,sup_dtA,sup_dxdtA,undershoot,max_f,sup_j,"
         "margin_i,margin_ii,margin_iii\n";
  for (const auto& r : series) {
    for (double z : {r.t, r.mass, r.kinetic, r.field, r.total, r.p_of_t, r.sup_dtA, r.sup_dxdtA,
                     r.undershoot, r.max_f, r.sup_j, r.margin_i, r.margin_ii})
      out << format_number(z) << ',';
    out << format_number(r.margin_iii) << '\n';
  }
}

void write_audit_json(const std::filesystem::path& path, const GronwallAudit& g,
                      const std::optional<DerivativeAudit>& d,
                      const std::vector<RepresentationSample>& samples) {
  json j;
  json steps = json::array();
  for (const auto& s : g.steps) {
    steps.push_back({{"t", s.t},
                     {"i", {{"lhs", s.lhs_i}, {"rhs", s.rhs_i}, {"margin", s.margin_i()}}},
                     {"ii", {{"lhs", s.lhs_ii}, {"rhs", s.rhs_ii}, {"rhs_2P", s.rhs_ii_2p},
                             {"margin", s.margin_ii()}}},
                     {"iii", {{"lhs", s.lhs_iii}, {"rhs", s.rhs_iii}, {"margin", s.margin_iii()}}},
                     {"envelope", {{"value", s.envelope}, {"margin", s.margin_envelope()}}}});
  }
  j["gronwall"] = {{"constants", {{"D", g.constants.data_term},
                                  {"f0_sup", g.constants.f0_sup},
                                  {"P0", g.constants.p0}}},
                   {"min_margin_i", number(g.min_margin_i)},
                   {"min_margin_ii", number(g.min_margin_ii)},
                   {"min_margin_iii", number(g.min_margin_iii)},
                   {"min_margin_ii_2P", number(g.min_margin_ii_2p)},
                   {"min_margin_envelope", number(g.min_margin_envelope)},
                   {"steps", steps}};
  if (d) {
    json levels = json::array();
    for (const auto& L : d->levels) {
      levels.push_back({{"t", L.t}, {"sup_dxf", L.sup_dxf}, {"sup_dvf", L.sup_dvf},
                        {"bound", number(L.bound)}, {"residual_x", L.residual_x},
                        {"residual_v", L.residual_v}, {"residual_x_all", L.residual_x_all},
                        {"residual_v_all", L.residual_v_all},
                        {"printed_residual_x", L.printed_residual_x},
                        {"printed_residual_v", L.printed_residual_v}, {"scale", L.scale}});
    }
    j["derivative_transport"] = {{"max_derivative_sum", d->max_derivative_sum},
                                 {"max_residual", d->max_residual},
                                 {"max_printed_residual", d->max_printed_residual},
                                 {"bound_holds", d->bound_holds},
                                 {"levels", levels}};
  } else {
    j["derivative_transport"] = nullptr;
  }
  json reps = json::array();
  for (const auto& r : samples) {
    reps.push_back({{"t", r.t}, {"x", r.x}, {"evolution", r.evolution}, {"paA", r.paA},
                    {"dalembert_diff", r.dalembert_diff}, {"fd_dxdtA", r.fd_dxdtA},
                    {"I_a", r.terms.i_a}, {"I_b", r.terms.i_b}, {"II", r.terms.ii},
                    {"local_moment", r.terms.local_moment}, {"total", r.terms.total},
                    {"total_as_printed", r.terms.as_printed}});
  }
  j["representation"] = reps;
  dump(path, j);
}

void write_picard_json(const std::filesystem::path& path, const PicardProblem& p,
                       const PicardResult& r, const std::optional<ContractionSweep>& sweep) {
  json iters = json::array();
  for (const auto& s : r.steps) {
    iters.push_back({{"n", s.n}, {"distance", number(s.distance)}, {"ratio", number(s.ratio)},
                     {"field_lipschitz", number(s.field_lipschitz)}, {"audit", bt(s.audit)}});
  }
  json j = {{"T", p.t_end()},
            {"levels", p.grid.n_steps},
            {"converged", r.converged},
            {"initial_audit", bt(r.initial_audit)},
            {"iterations", iters}};
  if (sweep) {
    json pts = json::array();
    for (const auto& q : sweep->points)
      pts.push_back({{"T", q.T}, {"levels", q.levels}, {"ratio", number(q.ratio)}});
    j["sweep"] = {{"points", pts},
                  {"threshold_T", sweep->threshold_T ? json(*sweep->threshold_T) : json(nullptr)}};
  }
  dump(path, j);
}

void write_convergence_json(const std::filesystem::path& path, const ConvergenceReport& r) {
  json levels = json::array();
  for (const auto& L : r.levels)
    levels.push_back({{"nx", L.nx}, {"nv", L.nv}, {"steps", L.steps}, {"dx", L.dx},
                      {"energy_drift", number(L.energy_drift)},
                      {"mass_drift", number(L.mass_drift)},
                      {"transport_error", number(L.transport_error)}});
  json to = json::array(), eo = json::array();
  for (double z : r.transport_orders) to.push_back(number(z));
  for (double z : r.energy_orders) eo.push_back(number(z));
  dump(path, {{"t_end", r.t_end},
              {"exact_reference", r.exact_reference},
              {"levels", levels},
              {"transport_orders", to},
              {"energy_orders", eo}});
}

void write_division_json(const std::filesystem::path& path, const std::vector<DivisionRow>& rows) {
  json arr = json::array();
  for (const auto& r : rows)
    arr.push_back({{"a", r.a}, {"phi_preset", r.phi_preset}, {"lhs", r.lhs}, {"rhs", r.rhs},
                   {"abs_err", r.abs_err}});
  dump(path, {{"rows", arr}});
}

}  // namespace kinwave
