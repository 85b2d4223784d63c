#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "basmajian/cli.hpp"

using namespace basmajian;

namespace {

struct Run {
    int code;
    std::string out, err;
};

Run run(std::vector<std::string> args) {
    args.insert(args.begin(), "basmajian");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::string field(const std::string& text, const std::string& key) {
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line))
        if (line.rfind(key + ": ", 0) == 0) return line.substr(key.size() + 2);
    return {};
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

std::filesystem::path scratch(const std::string& name) {
    return std::filesystem::temp_directory_path() / ("basmajian_cli_" + name);
}

}  // namespace

TEST_CASE("identity on a similarity system") {
    Run r = run({"identity", "--target", "similarity", "--c", "0.3333333333333333"});
    REQUIRE(r.code == 0);
    CHECK(field(r.out, "sum").find("1") == 0);
    CHECK(std::stod(field(r.out, "gap")) < 1e-3);
}

TEST_CASE("identity on the quadratic family") {
    Run r = run({"identity", "--c", "-10"});
    REQUIRE(r.code == 0);
    CHECK(field(r.out, "converged") == "true");
    CHECK(std::stod(field(r.out, "lambda1")) < 0.6);

    Run d = run({"identity", "--c", "0.3"});
    CHECK(d.code == 2);
    CHECK(d.err.find("error") != std::string::npos);

    CHECK(run({"identity", "--c", "0.25"}).code == 3);
}

TEST_CASE("identity on a Schottky preset writes terms") {
    auto csv = scratch("terms.csv");
    Run r = run({"identity", "--loop", "gamma", "--eps", "1e-4", "--out", csv.string(), "--dump-len", "3"});
    REQUIRE(r.code == 0);
    CHECK(field(r.out, "all_terms_real_positive") == "true");
    std::string text = slurp(csv);
    CHECK(text.rfind("length,word,re,im,abs\n", 0) == 0);
    CHECK(text.find("\n1,a,") != std::string::npos);
    std::filesystem::remove(csv);
}

TEST_CASE("monodromy") {
    Run g = run({"monodromy", "--loop", "gamma", "--max-len", "4"});
    REQUIRE(g.code == 0);
    CHECK(g.out.find("total,,12\n") != std::string::npos);
    Run p = run({"monodromy", "--loop", "gamma-prime", "--max-len", "4", "--all"});
    REQUIRE(p.code == 0);
    CHECK(p.out.find("total,,36\n") != std::string::npos);
    CHECK(p.out.find("\naB,1,2\n") != std::string::npos);
    CHECK(p.out.find("\nab,0,0\n") != std::string::npos);
}

TEST_CASE("dimension commands print JSON") {
    Run p = run({"dim", "--target", "similarity", "--c", "0.25", "--depth", "6"});
    REQUIRE(p.code == 0);
    auto j = nlohmann::json::parse(p.out);
    CHECK(j["value"].get<double>() == doctest::Approx(std::log(2.0) / std::log(4.0)).epsilon(1e-9));

    Run l = run({"dim", "--c", "-3", "--method", "levelsum", "--depth", "14"});
    REQUIRE(l.code == 0);
    CHECK(nlohmann::json::parse(l.out)["value"].get<double>() < 1.0);

    Run c = run({"dim", "--target", "similarity", "--c", "0.3333333333333333", "--method", "cutout", "--depth", "14"});
    REQUIRE(c.code == 0);
    CHECK(nlohmann::json::parse(c.out)["value"].get<double>() == doctest::Approx(0.6309).epsilon(0.05));

    CHECK(run({"dim", "--target", "similarity", "--c", "0.75"}).code == 3);
    CHECK(run({"dim", "--method", "nope"}).code != 0);
}

TEST_CASE("locus and plot") {
    auto csv = scratch("locus.csv"), svg = scratch("locus.svg"), svg2 = scratch("locus2.svg");
    Run r = run({"locus", "--rays", "4", "--depth", "12", "--grid", "16", "--tol", "1e-2", "--out", csv.string(),
                 "--svg", svg.string()});
    REQUIRE(r.code == 0);
    std::string text = slurp(csv);
    CHECK(std::count(text.begin(), text.end(), '\n') == 5);
    REQUIRE(run({"plot", "--in", csv.string(), "--svg", svg2.string()}).code == 0);
    CHECK(slurp(svg) == slurp(svg2));
    CHECK(slurp(svg).find("<svg") != std::string::npos);
    for (const auto& p : {csv, svg, svg2}) std::filesystem::remove(p);
    CHECK(run({"plot", "--in", "/nonexistent/x.csv", "--svg", svg.string()}).code == 1);
}

TEST_CASE("repeated runs are byte identical") {
    for (std::vector<std::string> args :
         {std::vector<std::string>{"identity", "--c", "-3+1i"},
          std::vector<std::string>{"dim", "--c", "-2.5", "--depth", "10"},
          std::vector<std::string>{"monodromy", "--loop", "gamma", "--max-len", "3", "--all"}}) {
        Run a = run(args), b = run(args);
        CHECK(a.code == b.code);
        CHECK(a.out == b.out);
    }
}
