#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

#include <nlohmann/json.hpp>

#include "gdrb/io.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

const std::string kCli = GDRB_CLI_PATH;

struct RunResult {
    int code = -1;
    std::string out;
};

RunResult run(const std::string& args)
{
    static int counter = 0;
    const fs::path out_file = fs::temp_directory_path()
                              / ("gdrb_cli_out_" + std::to_string(counter++) + ".txt");
    const std::string cmd = kCli + " " + args + " > " + out_file.string() + " 2>&1";
    const int status = std::system(cmd.c_str());
    RunResult r;
#ifdef WIFEXITED
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
#else
    r.code = status;
#endif
    std::ifstream in(out_file);
    r.out.assign(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
    fs::remove(out_file);
    return r;
}

fs::path temp_dir()
{
    const fs::path dir = fs::temp_directory_path() / "gdrb_cli_test";
    fs::create_directories(dir);
    return dir;
}

void write(const fs::path& p, const std::string& text)
{
    std::ofstream out(p);
    out << text;
}

const char* kDepolConfig = R"({
    "group": "t_pauli",
    "noise": {"model": "gate_independent", "r": 0.015},
    "m_list": [4, 8, 16, 32, 64],
    "n_seq": 30,
    "seed": 5
})";

} // namespace

TEST_CASE("simulate then fit round trip")
{
    const fs::path dir = temp_dir();
    write(dir / "cfg.json", kDepolConfig);
    const fs::path csv = dir / "data.csv";

    const RunResult sim = run("simulate --config " + (dir / "cfg.json").string() + " --out "
                              + csv.string());
    CHECK(sim.code == 0);
    const std::string text = gdrb::io::read_file(csv.string());
    CHECK(text.rfind("m,mean,variance,num_sequences\n", 0) == 0);

    const RunResult fit = run("fit --in " + csv.string());
    CHECK(fit.code == 0);
    const json j = json::parse(fit.out);
    // E = D_{0.97}: decay at p = 0.97 up to the fixed-SPAM model mismatch
    CHECK(std::abs(j["p_est"].get<double>() - 0.97) < 3e-3);
    CHECK(j["model"] == "fixed_spam");
    CHECK(j.contains("version"));
}

TEST_CASE("simulate output is byte-identical across runs")
{
    const fs::path dir = temp_dir();
    write(dir / "cfg2.json", kDepolConfig);
    const RunResult a = run("simulate --config " + (dir / "cfg2.json").string());
    const RunResult b = run("simulate --config " + (dir / "cfg2.json").string());
    CHECK(a.code == 0);
    CHECK(a.out == b.out);

    const RunResult c = run("simulate --config " + (dir / "cfg2.json").string() + " --seed 6");
    CHECK(c.code == 0);
    CHECK(a.out != c.out);
}

TEST_CASE("decompose reports the exact depolarizing decay")
{
    const fs::path dir = temp_dir();
    write(dir / "cfg3.json", kDepolConfig);
    const RunResult dec = run("decompose --config " + (dir / "cfg3.json").string());
    CHECK(dec.code == 0);
    const json j = json::parse(dec.out);
    CHECK(std::abs(j["p"].get<double>() - 0.97) < 1e-12);
    CHECK(std::abs(j["t"].get<double>() - 1.0) < 1e-12);
    CHECK(std::abs(j["r_internoise"].get<double>() - 0.015) < 1e-12);
    CHECK(j["delta2"].get<double>() < 1e-10);
    CHECK(j["residuals"]["rL"].get<double>() < 1e-12);
    CHECK(j["L"]["dim"] == 2);
}

TEST_CASE("bruteforce and theory agree for gate-independent noise")
{
    const fs::path dir = temp_dir();
    write(dir / "cfg4.json", R"({
        "group": "t_pauli",
        "noise": {"model": "gate_independent", "r": 0.015},
        "m_list": [1, 2, 3]
    })");
    const RunResult bf = run("bruteforce --config " + (dir / "cfg4.json").string());
    CHECK(bf.code == 0);
    CHECK(bf.out.rfind("m,exact_mean\n", 0) == 0);
    const RunResult th = run("theory --config " + (dir / "cfg4.json").string());
    CHECK(th.code == 0);
    CHECK(th.out.rfind("m,prediction,bound\n", 0) == 0);

    auto parse_csv = [](const std::string& text) {
        std::vector<double> vals;
        std::istringstream in(text);
        std::string line;
        std::getline(in, line);
        while (std::getline(in, line)) {
            if (line.empty())
                continue;
            const auto c1 = line.find(',');
            const auto c2 = line.find(',', c1 + 1);
            vals.push_back(std::stod(line.substr(c1 + 1, c2 - c1 - 1)));
        }
        return vals;
    };
    const std::vector<double> exact = parse_csv(bf.out);
    const std::vector<double> pred = parse_csv(th.out);
    REQUIRE(exact.size() == 3);
    REQUIRE(pred.size() == 3);
    for (std::size_t i = 0; i < 3; ++i)
        CHECK(std::abs(exact[i] - pred[i]) < 1e-12);
}

TEST_CASE("free-model fit through the CLI")
{
    const fs::path dir = temp_dir();
    write(dir / "free_cfg.json", R"({
        "group": "t_pauli",
        "noise": {"model": "random_unitary", "r": 0.002, "seed": 8},
        "m_list": [4, 8, 16, 32, 64, 128, 256, 512],
        "n_seq": 100,
        "seed": 21,
        "fit": {"model": "free", "min_m": 3}
    })");
    const fs::path csv = dir / "free_data.csv";
    CHECK(run("simulate --config " + (dir / "free_cfg.json").string() + " --out "
              + csv.string())
              .code
          == 0);
    const RunResult fit = run("fit --in " + csv.string() + " --config "
                              + (dir / "free_cfg.json").string());
    CHECK(fit.code == 0);
    const json j = json::parse(fit.out);
    CHECK(j["model"] == "free");
    // unital trace-preserving noise with ideal SPAM: A and B near 1/2
    CHECK(std::abs(j["A_est"].get<double>() - 0.5) < 0.05);
    CHECK(std::abs(j["B_est"].get<double>() - 0.5) < 0.05);
    CHECK(j["p_est"].get<double>() > 0.98);
}

TEST_CASE("decompose handles the Clifford depol+Z model")
{
    const fs::path dir = temp_dir();
    write(dir / "dz.json", R"({
        "group": "clifford",
        "noise": {"model": "depol_z", "nu": 0.99, "theta": 0.09}
    })");
    const RunResult dec = run("decompose --config " + (dir / "dz.json").string());
    CHECK(dec.code == 0);
    const json j = json::parse(dec.out);
    CHECK(std::abs(j["p"].get<double>() - 0.98877535) < 1e-6);
    CHECK(j["delta2"].get<double>() > 0.0);
}

TEST_CASE("counterexample analytics through the CLI")
{
    const RunResult r = run("counterexample --nu 0.99 --theta 0.09");
    CHECK(r.code == 0);
    const json j = json::parse(r.out);
    CHECK(std::abs(j["ratio"].get<double>() - 7.857) < 0.01);
    CHECK(std::abs(j["gamma"].get<double>() - 0.0445350) < 1e-6);
}

TEST_CASE("exit codes distinguish validation, numerical, and io failures")
{
    const fs::path dir = temp_dir();

    write(dir / "bad.json", R"({"group": "t_pauli", "unknown_key": 1})");
    CHECK(run("simulate --config " + (dir / "bad.json").string()).code == 1);

    CHECK(run("fit --in " + (dir / "no_such_file.csv").string()).code == 3);

    // strong noise makes the right-noise bound vacuous: numerical failure
    write(dir / "loud.json", R"({
        "group": "t_pauli",
        "noise": {"model": "random_unitary", "r": 0.5, "seed": 3}
    })");
    CHECK(run("decompose --config " + (dir / "loud.json").string()).code == 2);

    CHECK(run("simulate").code == 1);
}

TEST_CASE("reproduce-fig1 emits both panels")
{
    const fs::path dir = temp_dir() / "fig1";
    const RunResult r = run("reproduce-fig1 --out " + dir.string()
                            + " --experiments 10 --n-seq 20 --seed 2");
    CHECK(r.code == 0);
    const std::string left = gdrb::io::read_file((dir / "left.csv").string());
    const std::string right = gdrb::io::read_file((dir / "right.csv").string());
    CHECK(left.rfind("r,ci_lo,ci_hi,p_predicted\n", 0) == 0);
    CHECK(right.rfind("r,delta1,delta2\n", 0) == 0);
    CHECK(std::count(left.begin(), left.end(), '\n') == 4);
    CHECK(std::count(right.begin(), right.end(), '\n') == 4);
}

TEST_CASE("verify subcommand passes")
{
    const RunResult r = run("verify");
    CHECK(r.code == 0);
    CHECK(r.out.find("verify: all checks passed") != std::string::npos);
}
