#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <exception>
#include <string>

#include "reproduce.hpp"

int main(int argc, char** argv) {
  hyperwave::ReproduceOptions opt;
  for (int i = 1; i < argc; ++i) {
    const std::string a = argv[i];
    if (a == "--profile" && i + 1 < argc) {
      opt.profile = argv[++i];
    } else if (a == "--seed" && i + 1 < argc) {
      opt.seed = std::strtoull(argv[++i], nullptr, 10);
    } else {
      std::fprintf(stderr, "usage: acceptance [--profile desk|quick] [--seed N]\n");
      return 2;
    }
  }
  int failed = 0;
  opt.on_result = [&](const hyperwave::CriterionResult& r, double seconds) {
    if (!r.pass) ++failed;
    std::printf("criterion %2d: %s  %s  (%.1f s)  %s\n", r.id, r.pass ? "PASS" : "FAIL", r.name.c_str(), seconds,
                r.detail.c_str());
    std::fflush(stdout);
  };
  try {
    const auto rows = hyperwave::reproduce(opt);
    std::printf("%zu of %zu criteria passed\n", rows.size() - failed, rows.size());
  } catch (const std::exception& e) {
    std::fprintf(stderr, "acceptance: %s\n", e.what());
    return 2;
  }
  return failed == 0 ? 0 : 1;
}
