// Rebuilds the generated corpus files and goldens.json, or with --check verifies that the
// shipped copies are reproduced byte for byte and that every golden is within tolerance.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "golden.hpp"

namespace {

// First differing line, for a readable drift report.
void report_diff(const std::string& name, const std::string& shipped, const std::string& fresh) {
  std::size_t line = 1;
  std::size_t start = 0;
  while (true) {
    const std::size_t a_end = shipped.find('\n', start);
    const std::size_t b_end = fresh.find('\n', start);
    const std::string a = shipped.substr(start, a_end == std::string::npos ? std::string::npos : a_end - start);
    const std::string b = fresh.substr(start, b_end == std::string::npos ? std::string::npos : b_end - start);
    if (a != b || a_end != b_end) {
      std::cerr << name << ":" << line << ": shipped\n  " << a << "\nregenerated\n  " << b << '\n';
      return;
    }
    if (a_end == std::string::npos) return;
    start = a_end + 1;
    ++line;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Regenerate or check the shipped golden files"};
  std::string corpus;
  bool check = false;
  app.add_option("--corpus", corpus, "Corpus directory")->required();
  app.add_flag("--check", check, "Verify instead of writing");
  CLI11_PARSE(app, argc, argv);

  const std::filesystem::path dir(corpus);
  int failures = 0;
  try {
    const auto records = golden::compute_records();
    for (const auto& r : records) {
      if (!r.within_tolerance()) {
        ++failures;
        std::fprintf(stderr, "%s: expected %.17g, %s value %.17g, |diff| %.3g > tol %.3g\n",
                     r.id.c_str(), r.expected, r.provenance.c_str(), r.check,
                     std::abs(r.expected - r.check), r.tol);
      }
    }

    const std::pair<std::string, std::string> generated[] = {
        {golden::kRelayCodesFile, golden::relay_codes_text()},
        {golden::kSweepFile, golden::golden_sweep_text()},
        {golden::kGoldensFile, golden::goldens_text(dir, records)},
    };
    for (const auto& [name, text] : generated) {
      if (check) {
        const std::string shipped = golden::read_file(dir / name);
        if (shipped != text) {
          ++failures;
          report_diff(name, shipped, text);
        }
      } else {
        std::ofstream(dir / name, std::ios::binary) << text;
      }
    }
    std::printf("%zu goldens, %d failure(s)\n", records.size(), failures);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return failures == 0 ? 0 : 1;
}
