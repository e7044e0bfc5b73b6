#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include <json.hpp>

namespace {

struct cli_result {
    int code = -1;
    std::string out;
};

cli_result run_cli(const std::string& args) {
    const char* bin = std::getenv("SYZLAB_CLI");
    REQUIRE(bin != nullptr);  // set by the test harness to the built binary
    const std::string cmd = std::string(bin) + " " + args + " 2>&1";
    FILE* pipe = ::popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string out;
    char buf[4096];
    std::size_t n = 0;
    while ((n = std::fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, n);
    const int status = ::pclose(pipe);
    cli_result res;
    res.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    res.out = std::move(out);
    return res;
}

std::filesystem::path scratch_dir() {
    const auto dir = std::filesystem::temp_directory_path() / "syzlab_cli_scratch";
    std::filesystem::create_directories(dir);
    return dir;
}

const nlohmann::json* find_cell(const nlohmann::json& j, long p, long q) {
    for (const auto& c : j.at("cells"))
        if (c.at("p").get<long>() == p && c.at("q").get<long>() == q) return &c;
    return nullptr;
}

}  // namespace

TEST_CASE("betti formats agree on the twisted cubic", "[cliformats]") {
    const std::string base =
        "betti --system projline --b 0 --d 3 --pmax 3 --qmax 2 --field rational --seed 5";

    const cli_result js = run_cli(base + " --format json");
    REQUIRE(js.code == 0);
    const auto j = nlohmann::json::parse(js.out);
    REQUIRE(j.at("command") == "betti");
    REQUIRE(j.at("system") == "projline(b=0,d=3)");
    REQUIRE(j.at("field") == "rational");
    REQUIRE(j.at("seed") == 5);
    REQUIRE(j.at("certified") == true);
    REQUIRE(find_cell(j, 0, 0)->at("dim") == 1);
    REQUIRE(find_cell(j, 1, 1)->at("dim") == 3);
    REQUIRE(find_cell(j, 2, 1)->at("dim") == 2);
    REQUIRE(find_cell(j, 3, 1)->at("dim") == 0);
    REQUIRE(find_cell(j, 1, 2)->at("dim") == 0);
    // structured output round-trips
    REQUIRE(nlohmann::json::parse(j.dump(2)) == j);

    const cli_result csv = run_cli(base + " --format csv");
    REQUIRE(csv.code == 0);
    std::istringstream lines(csv.out);
    std::string line;
    std::getline(lines, line);
    REQUIRE(line == "# seed 5");
    std::getline(lines, line);
    REQUIRE(line == "p,q,dim,middle,rank_out,rank_in,certified,error");
    REQUIRE(csv.out.find("\n1,1,3,") != std::string::npos);
    REQUIRE(csv.out.find("\n2,1,2,") != std::string::npos);

    const cli_result txt = run_cli(base);
    REQUIRE(txt.code == 0);
    REQUIRE(txt.out.find("seed 5") != std::string::npos);
    REQUIRE(txt.out.find("certified yes") != std::string::npos);
}

TEST_CASE("a pinned seed makes reruns byte-identical", "[cliformats]") {
    const std::string cmd =
        "betti --system projline --b 1 --d 4 --pmax 3 --qmax 2 --field rational --seed 11 "
        "--format json";
    REQUIRE(run_cli(cmd).out == run_cli(cmd).out);

    const std::string sweep =
        "sweep --system projline --b 0 --p 1 --d-range 2..4 --field rational --seed 3";
    REQUIRE(run_cli(sweep).out == run_cli(sweep).out);
}

TEST_CASE("jets check reports the imposed rank", "[cliformats]") {
    const cli_result fails =
        run_cli("jets check --system projline --b 1 --d 3 '0 + 1 + 2'");
    REQUIRE(fails.code == 0);
    REQUIRE(fails.out.find("rank 2 of 3, FAILS") != std::string::npos);

    const cli_result ok = run_cli("jets check --system projline --b 2 --d 3 '0^3'");
    REQUIRE(ok.code == 0);
    REQUIRE(ok.out.find("rank 3 of 3, OK") != std::string::npos);

    const cli_result js =
        run_cli("jets check --system projline --b 1 --d 3 --format json '0 + 1 + 2'");
    REQUIRE(js.code == 0);
    const auto j = nlohmann::json::parse(js.out);
    REQUIRE(j.at("rank") == 2);
    REQUIRE(j.at("target") == 3);
    REQUIRE(j.at("independent") == false);
}

TEST_CASE("jets search certifies a violation", "[cliformats]") {
    const std::string cmd =
        "jets search --system projline --b 1 --d 3 --p 2 --seed 9 --trials 2000 --format json";
    const cli_result res = run_cli(cmd);
    REQUIRE(res.code == 0);
    const auto j = nlohmann::json::parse(res.out);
    REQUIRE(j.at("verdict") == "NO");
    REQUIRE(j.contains("witness"));
    REQUIRE(j.at("witness_rank").get<std::size_t>() < j.at("witness_target").get<std::size_t>());
    REQUIRE(run_cli(cmd).out == res.out);
}

TEST_CASE("mh1 reports kernel-bundle cohomology", "[cliformats]") {
    const cli_result txt =
        run_cli("mh1 --system projline --b 0 --d 3 --p 1 --field rational --seed 3");
    REQUIRE(txt.code == 0);
    REQUIRE(txt.out.find("\nh1 9\n") != std::string::npos);
    REQUIRE(txt.out.find("\nh0 0\n") != std::string::npos);

    const cli_result js = run_cli(
        "mh1 --system projline --b 2 --d 3 --p 1 --field rational --seed 3 --format json");
    REQUIRE(js.code == 0);
    const auto j = nlohmann::json::parse(js.out);
    REQUIRE(j.at("h1") == 0);
    REQUIRE(j.at("h0") == 9);
    REQUIRE(j.at("certified") == true);
}

TEST_CASE("sweep prints an uppercase prediction and parses as json", "[cliformats]") {
    const std::string base =
        "sweep --system projline --b 1 --p 2 --d-range 2..5 --field rational --seed 4";
    const cli_result txt = run_cli(base);
    REQUIRE(txt.code == 0);
    REQUIRE(txt.out.find("prediction NONVANISHING") != std::string::npos);

    const cli_result js = run_cli(base + " --format json");
    REQUIRE(js.code == 0);
    const auto j = nlohmann::json::parse(js.out);
    REQUIRE(j.at("prediction") == "nonvanishing");
    REQUIRE(j.at("entries").size() == 4);
    REQUIRE(j.at("matched") == true);
    // K_{2,1}(P^1, O(1); O(d)) over d = 2..5; positivity only sets in at d = 3
    const std::vector<long> expected = {0, 1, 4, 10};
    for (std::size_t i = 0; i < expected.size(); ++i)
        REQUIRE(j.at("entries")[i].at("dim").get<long>() == expected[i]);
    REQUIRE(j.at("onset") == 3);
}

TEST_CASE("validate accepts exported algebras and flags tampering", "[cliformats]") {
    const auto dir = scratch_dir();
    const auto good = (dir / "projline_export.json").string();
    const auto bad = (dir / "projline_tampered.json").string();

    const cli_result exp = run_cli("export --system projline --b 1 --d 2 --mmax 3 --out '" +
                                   good + "'");
    REQUIRE(exp.code == 0);

    const cli_result ok = run_cli("validate --system file --path '" + good + "' --seed 1");
    REQUIRE(ok.code == 0);
    REQUIRE(ok.out.find("result OK") != std::string::npos);

    // corrupt one product coefficient; commutativity must notice
    {
        std::ifstream in(good);
        auto j = nlohmann::json::parse(in);
        auto& mult = j.at("mult");
        REQUIRE(!mult.empty());
        mult[0][4] = mult[0][4].get<long long>() + 1;
        std::ofstream out(bad);
        out << j.dump(2) << "\n";
    }
    const cli_result tampered = run_cli("validate --system file --path '" + bad + "' --seed 1");
    REQUIRE(tampered.code == 1);
    REQUIRE(tampered.out.find("INVALID") != std::string::npos);
    REQUIRE(tampered.out.find("m=") != std::string::npos);
}

TEST_CASE("input errors exit 1, budget aborts exit 2", "[cliformats]") {
    REQUIRE(run_cli("betti --system projline --b 0").code == 1);       // missing --d
    REQUIRE(run_cli("betti --no-such-flag").code == 1);                // unknown option
    REQUIRE(run_cli("frobnicate").code == 1);                          // unknown subcommand
    REQUIRE(run_cli("jets check --system projline --b 1 --d 3 'x'").code == 1);
    REQUIRE(run_cli("sweep --system projline --b 0 --p 1 --d-range nope").code == 1);
    REQUIRE(run_cli("mh1 --system projline --b 0 --d 3 --p 1 --budget 5").code == 2);
    REQUIRE(run_cli("--help").code == 0);
}

TEST_CASE("the rank cache fills and leaves output unchanged", "[cliformats]") {
    const auto dir = scratch_dir() / "rank_cache";
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    const std::string cmd =
        "betti --system projline --b 1 --d 3 --pmax 2 --qmax 2 --field multi:3 --seed 21 "
        "--format json --cache '" + dir.string() + "'";
    const cli_result cold = run_cli(cmd);
    REQUIRE(cold.code == 0);
    std::size_t files = 0;
    for (const auto& e : std::filesystem::directory_iterator(dir))
        files += e.is_regular_file() ? 1 : 0;
    REQUIRE(files > 0);
    const cli_result warm = run_cli(cmd);
    REQUIRE(warm.code == 0);
    REQUIRE(warm.out == cold.out);
}

TEST_CASE("exported algebras reproduce the builtin table", "[cliformats]") {
    const auto dir = scratch_dir();
    const auto path = (dir / "projline_1_3.json").string();
    REQUIRE(run_cli("export --system projline --b 1 --d 3 --mmax 3 --out '" + path + "'").code ==
            0);

    const std::string tail = " --pmax 2 --qmax 2 --field rational --seed 7 --format json";
    const auto builtin = nlohmann::json::parse(
        run_cli("betti --system projline --b 1 --d 3" + tail).out);
    const auto from_file = nlohmann::json::parse(
        run_cli("betti --system file --path '" + path + "'" + tail).out);
    for (long q = 0; q <= 2; ++q)
        for (long p = 0; p <= 2; ++p) {
            INFO("p=" << p << " q=" << q);
            REQUIRE(find_cell(builtin, p, q)->at("dim") == find_cell(from_file, p, q)->at("dim"));
        }
}

TEST_CASE("auto-drawn seeds are echoed and reproducible", "[cliformats]") {
    const std::string base = "jets search --system projline --b 1 --d 3 --p 2 --trials 500";
    const cli_result first = run_cli(base);
    REQUIRE(first.code == 0);
    REQUIRE(first.out.rfind("seed ", 0) == 0);
    std::istringstream head(first.out);
    std::string word;
    std::uint64_t seed = 0;
    head >> word >> seed;

    const cli_result replay = run_cli(base + " --seed " + std::to_string(seed));
    REQUIRE(replay.out == first.out);
}

TEST_CASE("duality and edges are exposed on the command line", "[cliformats]") {
    const cli_result dual = run_cli(
        "duality --system elliptic --A 0 --Bw 1 --b 0 --d 4 --p 1 --field rational --seed 2");
    REQUIRE(dual.code == 0);
    REQUIRE(dual.out.find("equal yes") != std::string::npos);

    const cli_result edges = run_cli(
        "edges --system projline --b 1 --d 3 --pmax 2 --qmax 3 --field rational --seed 2");
    REQUIRE(edges.code == 0);
    REQUIRE(edges.out.find("vanish: yes") != std::string::npos);
}
