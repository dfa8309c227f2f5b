#include "cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <optional>
#include <ostream>
#include <sstream>
#include <string_view>

#include "CLI11.hpp"
#include "json.hpp"

#include "lwdist/estimation.hpp"
#include "lwdist/model_selection.hpp"

namespace lwdist::cli {
namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

bool parse_cell(std::string_view raw, double& out) {
  std::string t = trim(raw);
  if (t.empty()) return false;
  if (t[0] == '+') t.erase(0, 1);
  const char* b = t.data();
  const char* e = b + t.size();
  const auto [p, ec] = std::from_chars(b, e, out);
  return ec == std::errc() && p == e && std::isfinite(out);
}

std::vector<std::string> split(const std::string& line, char delim) {
  std::vector<std::string> cells;
  std::size_t pos = 0;
  while (true) {
    const std::size_t next = line.find(delim, pos);
    if (next == std::string::npos) {
      cells.push_back(line.substr(pos));
      break;
    }
    cells.push_back(line.substr(pos, next - pos));
    pos = next + 1;
  }
  return cells;
}

std::vector<double> parse_double_list(const std::string& csv,
                                      const std::string& flag) {
  std::vector<double> out;
  for (const std::string& tok : split(csv, ',')) {
    const std::string t = trim(tok);
    if (t.empty()) continue;
    double v = 0.0;
    if (!parse_cell(t, v)) {
      throw UsageError(flag + ": cannot parse '" + t + "' as a number");
    }
    out.push_back(v);
  }
  return out;
}

ParamVector params_from_csv(const std::string& model_id,
                            const std::string& csv) {
  ParamVector shape = model_param_shape(model_id);
  const std::vector<double> vals = parse_double_list(csv, "--params");
  if (vals.size() != shape.size()) {
    std::string names;
    for (const Param& p : shape) {
      if (!names.empty()) names += ",";
      names += p.name;
    }
    throw UsageError("--params: model " + model_id + " takes " +
                     std::to_string(shape.size()) + " values (" + names +
                     "), got " + std::to_string(vals.size()));
  }
  for (std::size_t i = 0; i < shape.size(); ++i) shape[i].value = vals[i];
  return shape;
}

struct GridSpec {
  double min = 0.0;
  double max = 0.0;
  long points = 0;
};

GridSpec parse_grid(const std::string& spec) {
  const std::vector<std::string> parts = split(spec, ':');
  GridSpec g;
  long pts = 0;
  const auto bad = [&]() -> UsageError {
    return UsageError("--grid: expected MIN:MAX:POINTS, got '" + spec + "'");
  };
  if (parts.size() != 3) throw bad();
  if (!parse_cell(parts[0], g.min) || !parse_cell(parts[1], g.max)) throw bad();
  const std::string p2 = trim(parts[2]);
  const auto [p, ec] = std::from_chars(p2.data(), p2.data() + p2.size(), pts);
  if (ec != std::errc() || p != p2.data() + p2.size()) throw bad();
  if (pts < 2) throw UsageError("--grid: needs at least 2 points");
  if (!(g.min < g.max)) throw UsageError("--grid: needs MIN < MAX");
  g.points = pts;
  return g;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream f(path);
  if (!f) throw DataError("cannot write file: " + path);
  return f;
}

std::string param_line(const ParamVector& params, bool full) {
  std::string s;
  for (const Param& p : params) {
    if (!s.empty()) s += " ";
    s += p.name + "=" + format_double(p.value, full);
  }
  return s;
}

// Shared flag set; each subcommand wires only the flags it uses.
struct Args {
  std::string data_path;
  std::string column;
  std::string model;
  std::string models_csv;
  bool models_given = false;
  bool log_shift_flag = false;
  std::uint64_t seed = 1;
  long n = 0;
  std::string grid_spec;
  std::string out_path;
  std::string params_csv;
  bool full_precision = false;
};

Dataset load_dataset(const Args& a) {
  Dataset ds = ingest(a.data_path, a.column);
  if (a.log_shift_flag) {
    LogShiftResult ls;
    try {
      ls = log_shift(ds.values);
    } catch (const std::invalid_argument& e) {
      throw DataError(e.what());
    }
    ds.values = std::move(ls.values);
    ds.transform_applied = DatasetTransform::log_shift;
    ds.shift = ls.shift;
  }
  return ds;
}

void require_known_model(const std::string& id) {
  if (!is_known_model(id)) {
    std::string known;
    for (const std::string& m : model_ids()) {
      if (!known.empty()) known += ",";
      known += m;
    }
    throw UsageError("unknown model id '" + id + "' (known: " + known + ")");
  }
}

// %.2f to match the comparison table's default rendering.
std::string metric_cell(double v, bool full) {
  if (full) return format_double(v, true);
  if (std::isinf(v)) return v > 0.0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

int cmd_fit(const Args& a, std::ostream& out) {
  require_known_model(a.model);
  const Dataset ds = load_dataset(a);
  const std::size_t k = model_n_params(a.model);
  if (ds.values.size() < k + 1) {
    throw DataError("need at least " + std::to_string(k + 1) +
                    " observations to fit " + a.model);
  }
  std::optional<ParamVector> start;
  if (!a.params_csv.empty()) start = params_from_csv(a.model, a.params_csv);

  FitResult fit;
  try {
    fit = mle_fit(a.model, ds.values, start);
  } catch (const std::exception& e) {
    throw NumericError(e.what());
  }
  const double a_ic = aic(fit.loglik, fit.n_params);
  const double b_ic = bic(fit.loglik, fit.n_params, fit.n_obs);

  const bool fp = a.full_precision;
  out << "dataset: " << ds.id << " (n=" << fit.n_obs << ", source "
      << ds.source_path << ")\n";
  if (ds.transform_applied == DatasetTransform::log_shift) {
    out << "transform: log-shift (subtracted constant "
        << format_double(ds.shift, fp) << ")\n";
  }
  out << "model: " << fit.model_id << "\n";
  out << "params: " << param_line(fit.params, fp) << "\n";
  out << "loglik: " << format_double(fit.loglik, fp) << "\n";
  out << "aic: " << format_double(a_ic, fp) << "\n";
  out << "bic: " << format_double(b_ic, fp) << "\n";
  out << "converged: " << (fit.converged ? "true" : "false") << "\n";
  out << "iterations: " << fit.iterations << "\n";
  out << "start: " << param_line(fit.start_params, fp) << "\n";
  if (!fit.converged) {
    out << "warning: optimizer did not converge within the iteration cap\n";
  }

  if (!a.out_path.empty()) {
    nlohmann::json j;
    j["dataset"] = ds.id;
    j["source"] = ds.source_path;
    j["transform"] = ds.transform_applied == DatasetTransform::log_shift
                         ? "log_shift"
                         : "none";
    if (ds.transform_applied == DatasetTransform::log_shift) {
      j["log_shift_constant"] = ds.shift;
    }
    j["n_obs"] = fit.n_obs;
    j["model"] = fit.model_id;
    j["converged"] = fit.converged;
    j["iterations"] = fit.iterations;
    j["loglik"] = fit.loglik;
    j["aic"] = a_ic;
    j["bic"] = b_ic;
    for (const Param& p : fit.params) j["params"][p.name] = p.value;
    for (const Param& p : fit.start_params) {
      j["start_params"][p.name] = p.value;
    }
    open_out(a.out_path) << j.dump(2) << "\n";
  }
  return 0;
}

int cmd_compare(const Args& a, std::ostream& out) {
  std::vector<std::string> ids;
  if (a.models_given) {
    for (const std::string& tok : split(a.models_csv, ',')) {
      const std::string t = trim(tok);
      if (!t.empty()) ids.push_back(t);
    }
    if (ids.empty()) throw UsageError("--models: empty model list");
    for (const std::string& id : ids) require_known_model(id);
  } else {
    ids = model_ids();
  }
  const Dataset ds = load_dataset(a);

  ComparisonTable table;
  try {
    table = compare(ds.id, ds.values, ids);
  } catch (const std::exception& e) {
    throw NumericError(e.what());
  }

  for (const ComparisonRow& r : table.rows) {
    if (!r.converged) {
      if (std::isinf(r.loglik)) {
        out << "warning: " << r.model_id << " failed to fit\n";
      } else {
        out << "warning: " << r.model_id << " did not converge\n";
      }
    }
  }
  const auto top3 = [&](std::size_t ComparisonRow::*rank,
                        double ComparisonRow::*metric, const char* name) {
    out << "top 3 by " << name << ":\n";
    for (std::size_t want = 1; want <= 3 && want <= table.rows.size();
         ++want) {
      for (const ComparisonRow& r : table.rows) {
        if (r.*rank == want) {
          out << "  " << want << ". " << r.model_id << " " << name << "="
              << metric_cell(r.*metric, a.full_precision) << "\n";
        }
      }
    }
  };
  top3(&ComparisonRow::rank_aic, &ComparisonRow::aic, "aic");
  top3(&ComparisonRow::rank_bic, &ComparisonRow::bic, "bic");

  if (a.out_path.empty()) {
    out << to_delimited(table, '\t', a.full_precision);
  } else {
    const bool csv = a.out_path.size() >= 4 &&
                     a.out_path.substr(a.out_path.size() - 4) == ".csv";
    open_out(a.out_path) << to_delimited(table, csv ? ',' : '\t',
                                         a.full_precision);
    out << "table written to " << a.out_path << "\n";
  }
  return 0;
}

int cmd_curve(const Args& a, std::ostream& out) {
  require_known_model(a.model);
  const ParamVector params = params_from_csv(a.model, a.params_csv);
  const GridSpec grid = parse_grid(a.grid_spec);

  std::string body = "y,pdf,cdf\n";
  try {
    const double step = (grid.max - grid.min) / static_cast<double>(grid.points - 1);
    for (long i = 0; i < grid.points; ++i) {
      const double y = i + 1 == grid.points
                           ? grid.max
                           : grid.min + step * static_cast<double>(i);
      const double p = model_pdf(a.model, params, y);
      const double c = model_cdf(a.model, params, y);
      body += format_double(y, a.full_precision);
      body += ',';
      body += format_double(p, a.full_precision);
      body += ',';
      body += format_double(c, a.full_precision);
      body += '\n';
    }
  } catch (const std::exception& e) {
    throw NumericError(e.what());
  }
  if (a.out_path.empty()) {
    out << body;
  } else {
    open_out(a.out_path) << body;
  }
  return 0;
}

int cmd_sample(const Args& a, std::ostream& out) {
  require_known_model(a.model);
  const ParamVector params = params_from_csv(a.model, a.params_csv);
  if (a.n <= 0) throw UsageError("--n: need a positive sample size");

  std::vector<double> values;
  try {
    values = model_sample(a.model, params, static_cast<std::size_t>(a.n),
                          a.seed);
  } catch (const std::exception& e) {
    throw NumericError(e.what());
  }
  std::string body;
  for (double v : values) {
    body += format_double(v, a.full_precision);
    body += '\n';
  }
  if (a.out_path.empty()) {
    out << body;
  } else {
    open_out(a.out_path) << body;
  }
  return 0;
}

}  // namespace

std::string format_double(double v, bool full_precision) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0.0 ? "inf" : "-inf";
  char buf[64];
  if (full_precision) {
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, ptr);
  }
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

Dataset ingest(const std::string& path, const std::string& column) {
  std::ifstream f(path);
  if (!f) throw DataError("cannot open file: " + path);

  std::vector<std::pair<std::size_t, std::string>> lines;  // line number, text
  std::string raw;
  for (std::size_t lineno = 1; std::getline(f, raw); ++lineno) {
    if (!raw.empty() && raw.back() == '\r') raw.pop_back();
    if (trim(raw).empty()) continue;
    lines.emplace_back(lineno, raw);
  }
  if (lines.empty()) throw DataError("empty dataset: " + path);

  const std::string& first = lines.front().second;
  const char delim = first.find('\t') != std::string::npos   ? '\t'
                     : first.find(',') != std::string::npos ? ','
                                                            : '\0';
  const auto cells_of = [&](const std::string& line) {
    return delim == '\0' ? std::vector<std::string>{line} : split(line, delim);
  };

  const std::vector<std::string> head = cells_of(first);
  bool headerless = true;
  for (const std::string& c : head) {
    double v;
    if (!parse_cell(c, v)) {
      headerless = false;
      break;
    }
  }

  std::size_t col = 0;
  std::string col_name;
  const std::size_t data_begin = headerless ? 0 : 1;
  if (headerless) {
    if (!column.empty()) {
      throw DataError("file has no header row; cannot select column '" +
                      column + "'");
    }
    if (head.size() != 1) {
      throw DataError(
          "headerless file has several columns; add a header row and pass a "
          "column name");
    }
    col_name = "1";
  } else {
    if (lines.size() < 2) throw DataError("empty dataset: " + path);
    if (!column.empty()) {
      bool found = false;
      for (std::size_t i = 0; i < head.size(); ++i) {
        if (trim(head[i]) == column) {
          col = i;
          found = true;
          break;
        }
      }
      if (!found) throw DataError("no column named '" + column + "' in " + path);
    } else if (head.size() == 1) {
      col = 0;
    } else {
      // Single numeric column, judged by the first data row.
      const std::vector<std::string> row = cells_of(lines[1].second);
      std::vector<std::size_t> numeric;
      for (std::size_t i = 0; i < row.size(); ++i) {
        double v;
        if (parse_cell(row[i], v)) numeric.push_back(i);
      }
      if (numeric.empty()) {
        throw DataError("no numeric column found in " + path);
      }
      if (numeric.size() > 1) {
        throw DataError("several numeric columns in " + path +
                        "; pass a column name");
      }
      col = numeric.front();
    }
    col_name = trim(head[std::min(col, head.size() - 1)]);
    if (col_name.empty()) col_name = std::to_string(col + 1);
  }

  Dataset ds;
  ds.source_path = path;
  ds.id = std::filesystem::path(path).stem().string();
  ds.values.reserve(lines.size());
  for (std::size_t i = data_begin; i < lines.size(); ++i) {
    const auto& [lineno, text] = lines[i];
    const std::vector<std::string> row = cells_of(text);
    if (col >= row.size()) {
      throw DataError("line " + std::to_string(lineno) +
                      ": missing cell in column '" + col_name + "'");
    }
    double v = 0.0;
    if (!parse_cell(row[col], v)) {
      throw DataError("line " + std::to_string(lineno) +
                      ": non-numeric cell '" + trim(row[col]) +
                      "' in column '" + col_name + "'");
    }
    ds.values.push_back(v);
  }
  if (ds.values.empty()) throw DataError("empty dataset: " + path);
  return ds;
}

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Lambert W transformed distributions: fitting and evaluation"};
  app.name("lwdist");
  app.require_subcommand(1);

  Args a;
  const auto add_data = [&](CLI::App* cmd) {
    cmd->add_option("--data", a.data_path, "input data file (comma or tab delimited)")
        ->required();
    cmd->add_option("--column", a.column, "column to read (default: the single numeric column)");
    cmd->add_flag("--log-shift", a.log_shift_flag,
                  "fit ln(y) - min(ln y) + 1e-10 instead of y");
  };
  const auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--out", a.out_path, "output file path");
    cmd->add_flag("--full-precision", a.full_precision,
                  "print shortest round-trip numbers instead of 6 significant digits");
  };

  CLI::App* fit = app.add_subcommand("fit", "Maximum-likelihood fit of one model");
  add_data(fit);
  fit->add_option("--model", a.model, "model id")->required();
  fit->add_option("--params", a.params_csv,
                  "optimizer start values, comma separated in registry order");
  add_common(fit);

  CLI::App* cmp = app.add_subcommand("compare", "Fit several models and rank by AIC/BIC");
  add_data(cmp);
  cmp->add_option("--models", a.models_csv, "comma separated model ids (default: all)")
      ->trigger_on_parse();
  add_common(cmp);

  CLI::App* curve = app.add_subcommand("curve", "Tabulate pdf and cdf over a grid");
  curve->add_option("--model", a.model, "model id")->required();
  curve->add_option("--params", a.params_csv,
                    "parameter values, comma separated in registry order")
      ->required();
  curve->add_option("--grid", a.grid_spec, "MIN:MAX:POINTS")->required();
  add_common(curve);

  CLI::App* smp = app.add_subcommand("sample", "Draw a reproducible sample");
  smp->add_option("--model", a.model, "model id")->required();
  smp->add_option("--params", a.params_csv,
                  "parameter values, comma separated in registry order")
      ->required();
  smp->add_option("--n", a.n, "sample size")->required();
  smp->add_option("--seed", a.seed, "RNG seed (default 1)");
  add_common(smp);

  std::vector<const char*> argv;
  argv.reserve(args.size() + 1);
  argv.push_back("lwdist");
  for (const std::string& s : args) argv.push_back(s.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  a.models_given = cmp->count("--models") > 0;

  try {
    if (fit->parsed()) return cmd_fit(a, out);
    if (cmp->parsed()) return cmd_compare(a, out);
    if (curve->parsed()) return cmd_curve(a, out);
    if (smp->parsed()) return cmd_sample(a, out);
    err << "error: no command given\n";
    return 1;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const DataError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const NumericError& e) {
    err << "error: " << e.what() << "\n";
    return 3;
  }
}

}  // namespace lwdist::cli
