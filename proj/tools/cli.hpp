#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "lwdist/distributions.hpp"

// Batch front end over the library: ingestion, fitting, comparison tables,
// curve export and sampling. Every command is plumbing around library calls;
// no numerics live here.
//
// Exit codes: 0 success (a flagged non-convergence still exits 0), 1 usage
// error, 2 data error, 3 numerical infeasibility.

namespace lwdist::cli {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct DataError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct NumericError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class DatasetTransform { none, log_shift };

struct Dataset {
  std::string id;
  std::vector<double> values;
  std::string source_path;
  DatasetTransform transform_applied = DatasetTransform::none;
  double shift = 0.0;  // log-shift subtracted constant when applied
};

// Reads a comma- or tab-delimited text file (delimiter auto-detected from the
// first line) with a header row; a headerless file whose first line is fully
// numeric is accepted too. Picks the named column, or the single numeric
// column when no name is given. Throws DataError with 1-based physical line
// numbers for bad cells.
Dataset ingest(const std::string& path, const std::string& column = "");

// 6 significant digits by default, shortest round-trip form when
// full_precision; infinities render as "inf" / "-inf".
std::string format_double(double v, bool full_precision);

// argv-style entry point shared by main() and the tests; args excludes the
// program name. Returns the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

}  // namespace lwdist::cli
