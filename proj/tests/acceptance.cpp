// End-to-end acceptance gate: one line per criterion, nonzero exit on any
// failure.  Criteria 1-8 run in-process; criterion 9 shells out to the CLI
// twice and byte-compares the emitted payloads.
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "bellfield/verify.hpp"

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

bool check_determinism() {
    const std::string cli = BELLFIELD_CLI_PATH;
    const std::string out1 = "acceptance_payload_1.json";
    const std::string out2 = "acceptance_payload_2.json";
    const std::string base =
        "\"" + cli + "\" verify-all --seed 42 > /dev/null --out ";
    if (std::system((base + out1).c_str()) != 0) return false;
    if (std::system((base + out2).c_str()) != 0) return false;
    const std::string a = slurp(out1), b = slurp(out2);
    std::remove(out1.c_str());
    std::remove(out2.c_str());
    return !a.empty() && a == b;
}

}  // namespace

int main() {
    bool all_pass = true;
    for (const auto& r : bellfield::run_verification(42)) {
        all_pass = all_pass && r.pass;
        std::cout << "criterion " << r.id << ": " << (r.pass ? "pass" : "FAIL")
                  << " - " << r.name << " (" << r.detail << ")\n";
    }

    const bool deterministic = check_determinism();
    all_pass = all_pass && deterministic;
    std::cout << "criterion 9: " << (deterministic ? "pass" : "FAIL")
              << " - repeated runs emit byte-identical payloads\n";

    std::cout << (all_pass ? "acceptance: all criteria passed"
                           : "acceptance: FAILURES above")
              << "\n";
    return all_pass ? 0 : 1;
}
