#include "aht/scenario.h"

#include <sstream>
#include <string>

#include <gtest/gtest.h>

#include "aht/error.h"
#include "aht/pauli.h"

namespace aht {
namespace {

using nlohmann::json;

json run_json(const json& j) {
  return json::parse(run_scenario(scenario_from_json(j)).text);
}

std::vector<std::vector<std::string>> csv_rows(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) {
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> cells;
    std::istringstream ls(line);
    for (std::string c; std::getline(ls, c, ',');) cells.push_back(c);
    rows.push_back(cells);
  }
  return rows;
}

TEST(TermTest, Forms) {
  auto t = parse_term("0.5 ZZ 1 3", 3);
  ASSERT_EQ(t.size(), 1u);
  EXPECT_EQ(t[0].letters, "ZIZ");
  EXPECT_DOUBLE_EQ(t[0].coefficient.real(), 0.5);

  t = parse_term("-1 XIZ", 3);
  ASSERT_EQ(t.size(), 1u);
  EXPECT_EQ(t[0].letters, "XIZ");
  EXPECT_DOUBLE_EQ(t[0].coefficient.real(), -1.0);

  EXPECT_EQ(parse_term("1.0 s12", 3).size(), 3u);
  EXPECT_EQ(parse_term("2 Sz", 4).size(), 4u);
  EXPECT_EQ(term_qubit_extent("0.5 ZZ 1 4"), 4);
  EXPECT_EQ(term_qubit_extent("1 s23"), 3);
}

TEST(TermTest, Malformed) {
  EXPECT_THROW(parse_term("ZZ 1 2", 2), ValidationError);
  EXPECT_THROW(parse_term("0.5 ZQ 1 2", 2), ValidationError);
  EXPECT_THROW(parse_term("0.5 ZZ 1", 2), ValidationError);
  EXPECT_THROW(parse_term("0.5 ZZ 1 1", 2), ValidationError);
  EXPECT_THROW(parse_term("0.5 ZZ 1 3", 2), ValidationError);
  EXPECT_THROW(parse_term("0.5 ZZZ", 2), ValidationError);
  EXPECT_THROW(parse_term("1 s13", 2), ValidationError);
}

TEST(ScenarioJsonTest, RoundTrip) {
  const json j = {
      {"kind", "scan"},
      {"hamiltonian", {"1 XX 1 2", "0.3 Z 1"}},
      {"sequence", "cp_x"},
      {"scan", {{"values", {0.1, 0.05}}, {"target", "magnus_defect"}}},
      {"seed", 7}};
  const Scenario s = scenario_from_json(j);
  EXPECT_EQ(s.format, "csv");
  EXPECT_EQ(s.seed, 7u);
  EXPECT_EQ(scenario_from_json(scenario_to_json(s)), s);

  const json n = {{"kind", "noise"},
                  {"noise", {{"scenario", "hybrid_dephasing"},
                             {"ensemble_size", 20},
                             {"encoded", false}}},
                  {"output", {{"format", "json"}, {"path", "x.json"}}}};
  const Scenario sn = scenario_from_json(n);
  EXPECT_FALSE(sn.noise->params.encoded);
  EXPECT_EQ(scenario_from_json(scenario_to_json(sn)), sn);

  const json p = {{"kind", "average"},
                  {"hamiltonian", "1 ZZ 1 2"},
                  {"pulses", {{{"axes", {"x", "x"}}, {"angle", "pi/2"}},
                              {{"pauli", "YY"}}}}};
  const Scenario sp = scenario_from_json(p);
  EXPECT_NEAR(sp.pulses[0].angle, std::numbers::pi / 2, 1e-15);
  EXPECT_EQ(scenario_from_json(scenario_to_json(sp)), sp);
}

TEST(ScenarioJsonTest, Rejections) {
  EXPECT_THROW(scenario_from_json({{"kind", "bogus"}}), ValidationError);
  EXPECT_THROW(scenario_from_json(json::object()), ValidationError);
  EXPECT_THROW(scenario_from_json({{"kind", "average"}, {"hamiltonain", "1 Z"}}),
               ValidationError);
  EXPECT_THROW(scenario_from_json({{"kind", "average"}, {"cycle_time", "x"}}),
               ValidationError);
  EXPECT_THROW(run_scenario(scenario_from_json(
                   {{"kind", "average"}, {"hamiltonian", "1 Z"}, {"sequence", "nope"}})),
               ValidationError);
  EXPECT_THROW(run_scenario(scenario_from_json(
                   {{"kind", "logical"}, {"code", "abc"}, {"hamiltonian", "1 Z 1"}})),
               ValidationError);
}

TEST(RunTest, ProjectZOnCpXIsZero) {
  const json out = run_json({{"kind", "project"},
                             {"qubits", 1},
                             {"hamiltonian", "1 Z 1"},
                             {"sequence", "cp_x"}});
  for (const auto& part : {"re", "im"})
    for (const auto& row : out["average"][part])
      for (const auto& x : row) EXPECT_EQ(x.get<double>(), 0.0);
}

TEST(RunTest, LogicalNs3Exchange) {
  const json out =
      run_json({{"kind", "logical"}, {"code", "ns3"}, {"hamiltonian", "1.0 s12"}});
  EXPECT_TRUE(out["preserves_code"].get<bool>());
  EXPECT_NEAR(out["identity_offset"].get<double>(), -1.0, 1e-12);
  ASSERT_EQ(out["logical_part"].size(), 1u);
  EXPECT_EQ(out["logical_part"][0]["term"], "X");
  EXPECT_NEAR(out["logical_part"][0]["re"].get<double>(), 2.0, 1e-12);
}

TEST(RunTest, ScanRatiosNearTwo) {
  const Scenario s = scenario_from_json(
      {{"kind", "scan"},
       {"hamiltonian", {"0.4 XX 1 2", "0.3 YZ 1 2", "0.5 Z 1", "0.2 X 2"}},
       {"sequence", "cp_x"},
       {"scan", {{"values", {0.1, 0.05, 0.025}}}}});
  const auto rows = csv_rows(run_scenario(s).text);
  ASSERT_EQ(rows.size(), 4u);  // header + three values
  EXPECT_EQ(rows[0][0], "cycle_time");
  for (int k = 2; k <= 3; ++k) {
    ASSERT_EQ(rows[k].size(), 4u);
    EXPECT_NEAR(std::stod(rows[k][3]), 2.0, 0.3);
  }
}

TEST(RunTest, HzUnitsScaleBy2Pi) {
  const json hz = run_json({{"kind", "average"}, {"units", "Hz"},
                            {"hamiltonian", "1 Z 1"},
                            {"pulses", {{{"pauli", "Z"}}, {{"pauli", "Z"}}}}});
  EXPECT_NEAR(hz["pauli"][0]["re"].get<double>(), 2 * std::numbers::pi, 1e-12);
}

TEST(RunTest, EncodedAverageReportsLogical) {
  const json out = run_json({{"kind", "average"},
                             {"code", "dfs2"},
                             {"hamiltonian", {"1 XX 1 2", "1 YY 1 2", "0.5 Z 1"}},
                             {"sequence", "cp_x"}});
  EXPECT_TRUE(out.contains("logical"));
  EXPECT_TRUE(out["logical"]["preserves_code"].get<bool>());
}

TEST(RunTest, UniversalityModes) {
  const json lie = run_json({{"kind", "universality"},
                             {"mode", "lie_closure"},
                             {"level", "logical"},
                             {"code", "ns3"},
                             {"hamiltonian", {"0.7 X 1", "0.4 Z 1"}},
                             {"sequence", "cp_x"}});
  EXPECT_EQ(lie["dimension"], 3);
  EXPECT_EQ(lie["verdict"], "su(2)");

  const json reach = run_json({{"kind", "universality"},
                               {"mode", "transformer_reach"},
                               {"hamiltonian", "1 Z 1"},
                               {"target", {"0.3 X 1", "-0.2 Y 1"}}});
  EXPECT_TRUE(reach["reachable"].get<bool>());
  EXPECT_LT(reach["residual"].get<double>(), 1e-8);
}

TEST(RunTest, NoiseIsDeterministic) {
  const json j = {{"kind", "noise"},
                  {"seed", 5},
                  {"noise", {{"scenario", "hybrid_dephasing"},
                             {"ensemble_size", 16},
                             {"total_time", 2e-3}}}};
  const std::string a = run_scenario(scenario_from_json(j)).text;
  const std::string b = run_scenario(scenario_from_json(j)).text;
  EXPECT_EQ(a, b);
  const auto rows = csv_rows(a);
  ASSERT_GE(rows.size(), 2u);
  EXPECT_EQ(rows[0][0], "time_s");
  json k = j;
  k["seed"] = 6;
  EXPECT_NE(run_scenario(scenario_from_json(k)).text, a);
}

TEST(ListTest, Catalog) {
  const std::string text = list_builtins();
  for (const char* name :
       {"ns3", "dfs2", "dfs2x2", "cp_x", "cp_x_symmetric", "whh4",
        "s1_selective_x1", "zz_extractor", "gmax_cycle", "hybrid_dephasing",
        "encoded_spin_boson", "encoded_depolarizing", "four_qubit_blockwise"})
    EXPECT_NE(text.find(name), std::string::npos) << name;
}

}  // namespace
}  // namespace aht
