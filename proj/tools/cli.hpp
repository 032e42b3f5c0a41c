#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"

#include "eigensplit/homotopy.hpp"

namespace eigensplit::cli {

enum class Format { json, csv, text };

/// One subcommand's result in all three output shapes.
struct Report {
  std::string title;
  nlohmann::ordered_json json;
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> notes;
  bool verified = true;  // false forces exit code 2
};

/// {"degree": n, "rank": r, "torsion": [...]} entries; zero modules only when dense.
nlohmann::ordered_json graded_json(const GradedModule& m, bool dense);
nlohmann::ordered_json module_json(const FgZpModule& m);

std::string emit(const Report& r, Format f);

/// Exit codes: 0 ok, 2 verification failure, 1 usage or precision error.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace eigensplit::cli
