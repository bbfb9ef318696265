#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

#include "quadlat/verify.hpp"

// One line per criterion. QUADLAT_ACCEPTANCE=quick restricts to A1-A6,
// a comma list (e.g. A3,A5) picks criteria.
int main(int argc, char** argv) {
  std::vector<std::string> ids;
  std::string sel = argc > 1 ? argv[1] : (std::getenv("QUADLAT_ACCEPTANCE") ? std::getenv("QUADLAT_ACCEPTANCE") : "");
  if (sel == "quick") {
    ids = quadlat::quick_criteria();
  } else if (!sel.empty() && sel != "full") {
    size_t a = 0;
    while (a <= sel.size()) {
      size_t b = sel.find(',', a);
      if (b == std::string::npos) b = sel.size();
      if (b > a) ids.push_back(sel.substr(a, b - a));
      a = b + 1;
    }
  }
  int failed = 0;
  quadlat::run_acceptance(ids, 1, [&](const quadlat::CriterionResult& r) {
    std::printf("%-4s %s  %.1fs/%.0fs  %s\n", r.id.c_str(), r.pass ? "PASS" : "FAIL", r.seconds, r.budget,
                r.detail.c_str());
    std::fflush(stdout);
    failed += !r.pass;
  });
  return failed ? 1 : 0;
}
