#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace mlab::cli {

// Exit codes: 0 pass, 1 certified-inequality violation, 2 usage error,
// 3 resource guard violation.
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);
int run(int argc, const char* const* argv, std::ostream& out,
        std::ostream& err);

struct RunOutcome {
  int code = 0;
  std::string out;
  std::string err;
};

RunOutcome run_capture(const std::vector<std::string>& args);

// Grid parsing ("4:16", "2:64:x2", "1.5:3.0:0.1", "4,6,8").
std::vector<int> parse_int_grid(const std::string& text);
std::vector<double> parse_double_grid(const std::string& text);

}  // namespace mlab::cli
