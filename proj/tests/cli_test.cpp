#include <gtest/gtest.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <unistd.h>

namespace {

namespace fs = std::filesystem;

struct ToolRun {
    int code = -1;
    std::string out;
};

ToolRun pfk(const std::string& args) {
    std::string cmd = std::string(PFK_BINARY) + " " + args + " 2>/dev/null";
    ToolRun r;
    FILE* p = ::popen(cmd.c_str(), "r");
    if (!p) return r;
    std::array<char, 4096> buf{};
    std::size_t n;
    while ((n = std::fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), n);
    int status = ::pclose(p);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::string corpus(const std::string& name) { return (fs::path(PFK_CORPUS_DIR) / name).string(); }

class CliTest : public ::testing::Test {
protected:
    void SetUp() override {
        dir_ = fs::temp_directory_path() / ("pfk_cli_" + std::to_string(::getpid()) + "_" +
                                            ::testing::UnitTest::GetInstance()->current_test_info()->name());
        fs::remove_all(dir_);
        fs::create_directories(dir_);
    }
    void TearDown() override { fs::remove_all(dir_); }

    std::string write(const std::string& name, const std::string& text) {
        fs::path p = dir_ / name;
        std::ofstream(p) << text;
        return p.string();
    }

    fs::path dir_;
};

TEST_F(CliTest, CheckExitCodes) {
    EXPECT_EQ(pfk("check " + corpus("prelude.pfk")).code, 0);
    EXPECT_EQ(pfk("check " + corpus("nat.pfk")).code, 0);
    ToolRun bad = pfk("check " + write("bad.pfk", "assert o : El o.\n"));
    EXPECT_EQ(bad.code, 1);
    EXPECT_NE(bad.out.find("FAIL"), std::string::npos);
    EXPECT_NE(bad.out.find("TypeMismatch"), std::string::npos);
    EXPECT_EQ(pfk("check " + (dir_ / "absent.pfk").string()).code, 2);
    EXPECT_EQ(pfk("check " + write("syntax.pfk", "A : Set\n")).code, 2);
    EXPECT_EQ(pfk("frobnicate").code, 2);
}

TEST_F(CliTest, PreludeModeSwitch) {
    std::string f = write("raw.pfk", "nat : TYPE.\n");
    EXPECT_EQ(pfk("check " + f).code, 1);
    EXPECT_EQ(pfk("check " + f + " --no-prelude").code, 0);
}

TEST_F(CliTest, Interp) {
    std::string args = "interp --source " + corpus("nat.pfk") + " --target " + corpus("int.pfk") + " --map " +
                       corpus("nat_to_int.pfm");
    ToolRun ok = pfk(args);
    EXPECT_EQ(ok.code, 0);
    EXPECT_NE(ok.out.find("SUMMARY total=16 passed=16 failed=0 errors=0"), std::string::npos) << ok.out;

    std::ifstream in(corpus("nat_to_int.pfm"));
    std::string text((std::istreambuf_iterator<char>(in)), {});
    std::string trimmed;
    std::istringstream lines(text);
    for (std::string line; std::getline(lines, line);)
        if (!line.starts_with("geq_n.")) trimmed += line + "\n";
    std::string map = write("map.pfm", trimmed);
    EXPECT_EQ(pfk("interp --source " + corpus("nat.pfk") + " --target " + corpus("int.pfk") + " --map " + map).code,
              2);
}

TEST_F(CliTest, TransferWritesACheckableFile) {
    std::string out = (dir_ / "out.pfk").string();
    ToolRun r = pfk("transfer --source " + corpus("nat.pfk") + " --target " + corpus("int.pfk") + " --map " +
                corpus("nat_to_int.pfm") + " --out " + out + " " + corpus("thm_nat.pfk"));
    EXPECT_EQ(r.code, 0) << r.out;
    ASSERT_TRUE(fs::exists(out));
    EXPECT_EQ(pfk("check " + corpus("int.pfk") + " " + out).code, 0);

    std::string ill = write("ill.pfk", "def bad : El nat := o.\n");
    EXPECT_EQ(pfk("transfer --source " + corpus("nat.pfk") + " --target " + corpus("int.pfk") + " --map " +
                  corpus("nat_to_int.pfm") + " " + ill)
                  .code,
              2);
}

TEST_F(CliTest, JsonReport) {
    ToolRun a = pfk("selftest --format json");
    ToolRun b = pfk("--format json selftest");
    EXPECT_EQ(a.code, 0);
    EXPECT_EQ(a.out, b.out);
    auto j = nlohmann::json::parse(a.out);
    EXPECT_EQ(j["command"], "selftest");
    EXPECT_EQ(j["summary"]["total"], 24);
    EXPECT_EQ(j["summary"]["passed"], 24);
    EXPECT_EQ(j["exit_code"], 0);
    EXPECT_EQ(j["records"].size(), 24u);
    EXPECT_TRUE(j["records"][0]["cause"].is_null());
}

TEST_F(CliTest, EmitPrelude) {
    EXPECT_EQ(pfk("emit-prelude --out " + dir_.string()).code, 0);
    EXPECT_TRUE(fs::exists(dir_ / "prelude.pfk"));
    EXPECT_TRUE(fs::exists(dir_ / "prelude.pfm"));
    EXPECT_EQ(pfk("check --no-prelude " + (dir_ / "prelude.pfk").string()).code, 0);
}

}  // namespace
