#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <fstream>
#include <sstream>

#include "bigp/scenario.hpp"
#include "bigp/sim.hpp"

using namespace bigp;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream f(path);
  REQUIRE(f);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

std::string scenario_path(const char* name) {
  return std::string(BIGP_SCENARIO_DIR) + "/" + name;
}

const char* kTwoRouter = R"(
param asn_split 32768
node R1 asn 100 prefix 10.1.0.0/16
node R2 asn 100 prefix 10.2.0.0/16
link R1 R2 cost 10 delay_ms 5
run_until 120.0
)";

const char* kTriangle = R"(
param asn_split 32768
node R1 asn 100 prefix 10.1.0.0/16
node R2 asn 100 prefix 10.2.0.0/16
node R3 asn 100 prefix 10.3.0.0/16
link R1 R2 cost 10 delay_ms 5
link R1 R3 cost 10 delay_ms 5
link R2 R3 cost 10 delay_ms 5
at 100.0 link_down R1 R2
at 150.0 ping R1 10.2.0.1
run_until 290.0
)";

struct TraceLine {
  SimTime t;
  std::string src, dst, type;
  Asn asn;
  int cbi, cbb;
  std::string rest;
};

std::vector<TraceLine> parse_trace(const std::string& trace) {
  std::vector<TraceLine> out;
  std::istringstream is(trace);
  std::string line;
  while (std::getline(is, line)) {
    TraceLine tl;
    std::istringstream ls(line);
    std::string tok;
    ls >> tok;
    REQUIRE(tok.rfind("t=", 0) == 0);
    tl.t = std::stoll(tok.substr(2));
    ls >> tok;
    auto arrow = tok.find("->");
    REQUIRE(arrow != std::string::npos);
    tl.src = tok.substr(0, arrow);
    tl.dst = tok.substr(arrow + 2);
    ls >> tl.type;
    ls >> tok;
    REQUIRE(tok.rfind("asn=", 0) == 0);
    tl.asn = static_cast<Asn>(std::stoul(tok.substr(4)));
    ls >> tok;
    tl.cbi = tok == "cbi=1";
    ls >> tok;
    tl.cbb = tok == "cbb=1";
    std::getline(ls, tl.rest);
    out.push_back(tl);
  }
  return out;
}

}  // namespace

TEST_CASE("load_scenario parses the figure-6 document") {
  Scenario sc = load_scenario(read_file(scenario_path("fig6.scn")));
  CHECK(sc.topology.nodes.size() == 4);
  CHECK(sc.topology.links.size() == 3);
  CHECK(sc.actions.size() == 1);
  CHECK(sc.actions[0].kind == ActionSpec::Kind::Ping);
  CHECK(sc.run_until == sim_seconds(200));
  CHECK(sc.topology.asn_split == 32768);
}

TEST_CASE("load_scenario validation failures") {
  SUBCASE("domain asn must stay below asn_split") {
    const char* text = "node R1 asn 40000 prefix 10.1.0.0/16\nrun_until 10.0\n";
    CHECK_THROWS_AS(load_scenario(text), ScenarioError);
  }
  SUBCASE("duplicate router id") {
    const char* text =
        "node R1 asn 100\nnode R1 asn 101\nrun_until 10.0\n";
    CHECK_THROWS_AS(load_scenario(text), ScenarioError);
  }
  SUBCASE("refresh interval outside [30,60]") {
    const char* text = "node R1 asn 100 refresh 20\nrun_until 10.0\n";
    CHECK_THROWS_AS(load_scenario(text), ScenarioError);
    const char* text2 = "node R1 asn 100 refresh 61\nrun_until 10.0\n";
    CHECK_THROWS_AS(load_scenario(text2), ScenarioError);
  }
  SUBCASE("link endpoints must exist") {
    const char* text =
        "node R1 asn 100\nlink R1 R9 cost 10 delay_ms 5\nrun_until 10.0\n";
    CHECK_THROWS_AS(load_scenario(text), ScenarioError);
  }
  SUBCASE("actions referencing unknown entities") {
    const char* text =
        "node R1 asn 100\nnode R2 asn 100\nlink R1 R2 cost 10 delay_ms 5\n"
        "at 5.0 link_down R1 R3\nrun_until 10.0\n";
    CHECK_THROWS_AS(load_scenario(text), ScenarioError);
  }
  SUBCASE("stub router with an inter-domain link") {
    const char* text =
        "node R1 asn 100 stub\nnode R2 asn 200\nlink R1 R2 cost 10 delay_ms 5\n"
        "run_until 10.0\n";
    CHECK_THROWS_AS(load_scenario(text), ScenarioError);
  }
  SUBCASE("parse errors carry the line number") {
    try {
      load_scenario("node R1 asn 100\nbogus line here\n");
      FAIL("expected ScenarioError");
    } catch (const ScenarioError& e) {
      CHECK(e.kind() == ScenarioError::Kind::Parse);
      CHECK(e.line() == 2);
    }
  }
}

TEST_CASE("determinism: identical inputs give byte-identical traces and metrics") {
  Scenario sc = load_scenario(read_file(scenario_path("fig6.scn")));
  RunOutputs a = run_scenario(sc, std::nullopt, 1);
  RunOutputs b = run_scenario(sc, std::nullopt, 2);  // default runs ignore the seed
  RunOutputs c = run_scenario(sc, std::nullopt, 1);
  CHECK(a.trace == b.trace);
  CHECK(a.trace == c.trace);
  CHECK(metrics_to_json(a.metrics) == metrics_to_json(b.metrics));
  CHECK(metrics_to_json(a.metrics) == metrics_to_json(c.metrics));
}

TEST_CASE("a static 2-router domain converges in well under five seconds") {
  Scenario sc = load_scenario(kTwoRouter);
  World w(sc, 0);
  w.run(sc.run_until);
  REQUIRE(w.metrics().phases.size() == 1);
  const PhaseMetrics& p = w.metrics().phases[0];
  REQUIRE(p.converged);
  CHECK(*p.convergence_ms < sim_seconds(5));

  // Both routers ended with the full picture: own and remote prefixes.
  for (RouterId id : {RouterId{1}, RouterId{2}}) {
    CHECK(w.igp(id).table_a().size() == 2);
    CHECK(w.igp(id).full_neighbors().size() == 1);
  }
}

TEST_CASE("refresh floods follow the configured interval exactly") {
  SUBCASE("refresh 30 over 120 s: four refresh floods per router") {
    Scenario sc = load_scenario(kTwoRouter);
    World w(sc, 0);
    w.run(sc.run_until);
    std::map<std::string, int> per_router;
    for (const TraceLine& l : parse_trace(w.trace()))
      if (l.type == "UPDATE_A" && l.rest.find("tag=refresh") != std::string::npos)
        per_router[l.src]++;
    CHECK(per_router["R1"] == 4);  // t=30,60,90,120
    CHECK(per_router["R2"] == 4);
  }
  SUBCASE("refresh 60 over 120 s: two floods") {
    std::string text = kTwoRouter;
    text.replace(text.find("prefix 10.1.0.0/16"), 18, "prefix 10.1.0.0/16 refresh 60");
    text.replace(text.find("prefix 10.2.0.0/16"), 18, "prefix 10.2.0.0/16 refresh 60");
    Scenario sc = load_scenario(text);
    World w(sc, 0);
    w.run(sc.run_until);
    std::map<std::string, int> per_router;
    for (const TraceLine& l : parse_trace(w.trace()))
      if (l.type == "UPDATE_A" && l.rest.find("tag=refresh") != std::string::npos)
        per_router[l.src]++;
    CHECK(per_router["R1"] == 2);
    CHECK(per_router["R2"] == 2);
  }
}

TEST_CASE("silent link failure is detected by hello loss at the dead interval") {
  std::string text = R"(
param asn_split 32768
node R1 asn 100 prefix 10.1.0.0/16
node R2 asn 100 prefix 10.2.0.0/16
node R3 asn 100 prefix 10.3.0.0/16
link R1 R2 cost 10 delay_ms 5
link R2 R3 cost 10 delay_ms 5
at 45.0 link_down R1 R2
run_until 200.0
)";
  Scenario sc = load_scenario(text);
  World w(sc, 0);
  w.run(sc.run_until);

  // Last hello crossed at 40.006 (sent on the 1 ms startup grid); the
  // inactivity check fires exactly one dead interval later, so the phase
  // settles between dead - hello and dead (plus flood time) after the cut.
  REQUIRE(w.metrics().phases.size() == 2);
  const PhaseMetrics& p = w.metrics().phases[1];
  REQUIRE(p.converged);
  SimTime dead = sim_seconds(40), hello = sim_seconds(10);
  CHECK(*p.convergence_ms >= dead - hello);
  CHECK(*p.convergence_ms <= dead + sim_seconds(1));

  // Both endpoints tore the adjacency down and re-originated without it.
  CHECK(w.igp(1).full_neighbors().empty());
  CHECK(w.igp(1).lsdb().by_origin.at(1).links.empty());
  CHECK(w.igp(1).table_a().size() == 1);  // own prefix only
  CHECK(w.igp(2).full_neighbors() == std::set<RouterId>{3});
  REQUIRE(w.igp(2).lsdb().by_origin.at(2).links.size() == 1);
  CHECK(w.igp(2).lsdb().by_origin.at(2).links[0].first == 3);
  CHECK(w.igp(2).table_a().size() == 2);  // 10.1/16 dropped

  // Teardown instant: last hello delivery 40.006 + dead interval. R2's
  // triggered re-origination reaches R3 as a flood.
  bool teardown_flood_seen = false;
  for (const TraceLine& l : parse_trace(w.trace()))
    if (l.type == "UPDATE_A" && l.t == 80006 && l.src == "R2" &&
        l.rest.find("tag=triggered") != std::string::npos)
      teardown_flood_seen = true;
  CHECK(teardown_flood_seen);
}

TEST_CASE("after a non-partitioning failure all LSDBs in the domain re-agree") {
  Scenario sc = load_scenario(kTriangle);
  World w(sc, 0);
  w.run(sc.run_until);

  REQUIRE(w.metrics().phases.size() == 2);
  CHECK(w.metrics().phases[1].converged);

  auto bytes1 = w.igp(1).lsdb().canonical_bytes();
  CHECK(bytes1 == w.igp(2).lsdb().canonical_bytes());
  CHECK(bytes1 == w.igp(3).lsdb().canonical_bytes());

  // Converged FULL relations are symmetric.
  for (RouterId a : {RouterId{1}, RouterId{2}, RouterId{3}})
    for (RouterId b : w.igp(a).full_neighbors())
      CHECK(w.igp(b).full_neighbors().count(a) == 1);

  // Traffic between the failed link's endpoints re-routes over R3.
  REQUIRE(w.metrics().pings.size() == 1);
  CHECK(w.metrics().pings[0].delivered);
  CHECK(w.metrics().pings[0].hops ==
        std::vector<RouterId>{1, 3, 2});
}

TEST_CASE("flooding a refresh reaches every router of a line within 3 delays") {
  const char* text = R"(
param asn_split 32768
node R1 asn 100 prefix 10.1.0.0/16
node R2 asn 100 prefix 10.2.0.0/16
node R3 asn 100 prefix 10.3.0.0/16
node R4 asn 100 prefix 10.4.0.0/16
link R1 R2 cost 10 delay_ms 5
link R2 R3 cost 10 delay_ms 5
link R3 R4 cost 10 delay_ms 5
run_until 31.0
)";
  Scenario sc = load_scenario(text);
  World w(sc, 0);
  w.run(sc.run_until);

  // R1's refresh at t=30 must be held by every router by 30 + 3 link delays.
  std::uint32_t seq = w.igp(1).lsdb().by_origin.at(1).seq;
  for (RouterId id : {RouterId{2}, RouterId{3}, RouterId{4}})
    CHECK(w.igp(id).lsdb().by_origin.at(1).seq == seq);

  int copies = 0;
  for (const TraceLine& l : parse_trace(w.trace()))
    if (l.type == "UPDATE_A" && l.t >= 30000 &&
        l.rest.find("R1:" + std::to_string(seq)) != std::string::npos)
      ++copies;
  CHECK(copies <= 2 * 3);  // <= 2 x links for a single origination
  CHECK(copies >= 3);      // it did traverse the line
}

TEST_CASE("link_down then link_up restores end-to-end delivery") {
  std::string text = read_file(scenario_path("fig6.scn"));
  text.replace(text.find("at 80.0 ping R2 10.4.0.1"), 24,
               "at 50.0 link_down R1 R3\nat 150.0 ping R2 10.4.0.1\nat 160.0 "
               "link_up R1 R3\nat 175.0 ping R2 10.4.0.1");
  Scenario sc = load_scenario(text);
  World w(sc, 0);
  w.run(sc.run_until);

  REQUIRE(w.metrics().pings.size() == 2);
  // During the outage the default route is gone: nothing inter matches.
  CHECK(!w.metrics().pings[0].delivered);
  CHECK(w.metrics().pings[0].drop_reason == "NoInterRoute");
  // After restoration the original path works again.
  CHECK(w.metrics().pings[1].delivered);
  CHECK(w.metrics().pings[1].hops == std::vector<RouterId>{2, 1, 3, 4});
}

TEST_CASE("DATA hop timestamps advance by exactly the link delay") {
  Scenario sc = load_scenario(read_file(scenario_path("fig6.scn")));
  World w(sc, 0);
  w.run(sc.run_until);
  std::vector<TraceLine> data;
  for (const TraceLine& l : parse_trace(w.trace()))
    if (l.type == "DATA") data.push_back(l);
  REQUIRE(data.size() == 3);
  CHECK(data[0].t == 80000);
  CHECK(data[1].t == 80005);
  CHECK(data[2].t == 80010);
}

TEST_CASE("no router floods the same (origin, seq) twice to a neighbor") {
  for (const char* name : {"fig6.scn", "dualphase.scn", "asbr_mesh.scn"}) {
    Scenario sc = load_scenario(read_file(scenario_path(name)));
    World w(sc, 0);
    w.run(sc.run_until);
    std::set<std::string> seen;
    for (const TraceLine& l : parse_trace(w.trace())) {
      if (l.type != "UPDATE_A") continue;
      if (l.rest.find("tag=snapshot") != std::string::npos) continue;
      auto open = l.rest.find("lsas=[");
      REQUIRE(open != std::string::npos);
      auto close = l.rest.find(']', open);
      std::string list = l.rest.substr(open + 6, close - open - 6);
      std::istringstream ls(list);
      std::string item;
      while (std::getline(ls, item, ',')) {
        std::string key = l.src + ">" + l.dst + ">" + item;
        CHECK(seen.insert(key).second);
      }
    }
  }
}

TEST_CASE("message counts equal trace line totals") {
  Scenario sc = load_scenario(read_file(scenario_path("loopring.scn")));
  World w(sc, 0);
  w.run(sc.run_until);
  std::map<std::string, std::uint64_t> by_type;
  for (const TraceLine& l : parse_trace(w.trace())) by_type[l.type]++;
  CHECK(by_type["HELLO"] == w.metrics().msg_counts.at(MsgType::HELLO));
  CHECK(by_type["UPDATE_A"] == w.metrics().msg_counts.at(MsgType::UPDATE_A));
  CHECK(by_type["UPDATE_B"] == w.metrics().msg_counts.at(MsgType::UPDATE_B));
  CHECK(by_type["DATA"] == w.metrics().msg_counts.at(MsgType::DATA));
}

TEST_CASE("every ping reaches exactly one terminal state") {
  for (const char* name : {"fig6.scn", "loopring.scn", "asbr_mesh.scn"}) {
    Scenario sc = load_scenario(read_file(scenario_path(name)));
    World w(sc, 0);
    w.run(sc.run_until);
    for (const PingRecord& p : w.metrics().pings) {
      bool terminal = p.delivered || !p.drop_reason.empty();
      CHECK(terminal);
      if (p.delivered) CHECK(p.drop_reason.empty());
    }
  }
}

TEST_CASE("vacuous runs") {
  SUBCASE("empty world, until 0: empty trace and zero counts") {
    Scenario sc = load_scenario("run_until 0\n");
    World w(sc, 0);
    w.run(0);
    CHECK(w.trace().empty());
    CHECK(w.metrics().msg_counts.empty());
    CHECK(w.metrics().pings.empty());
  }
  SUBCASE("populated world, until 0: startup never happens") {
    Scenario sc = load_scenario(kTwoRouter);
    World w(sc, 0);
    w.run(0);
    CHECK(w.trace().empty());
  }
  SUBCASE("empty world with room to observe quiet converges at zero") {
    Scenario sc = load_scenario("run_until 100.0\n");
    World w(sc, 0);
    w.run(sc.run_until);
    REQUIRE(w.metrics().phases.size() == 1);
    CHECK(w.metrics().phases[0].converged);
    CHECK(*w.metrics().phases[0].convergence_ms == 0);
  }
  SUBCASE("a run ending one second after a change is NotConverged") {
    std::string text = kTwoRouter;
    text.replace(text.find("run_until 120.0"), 15,
                 "at 100.0 link_down R1 R2\nrun_until 101.0");
    Scenario sc = load_scenario(text);
    World w(sc, 0);
    w.run(sc.run_until);
    REQUIRE(w.metrics().phases.size() == 2);
    CHECK(!w.metrics().phases[1].converged);
  }
}

TEST_CASE("multi-access segment members agree on DR and BDR") {
  const char* text = R"(
param asn_split 32768
node R1 asn 100 prefix 10.1.0.0/16 priority 200
node R2 asn 100 prefix 10.2.0.0/16 priority 100
node R3 asn 100 prefix 10.3.0.0/16 priority 100
link R1 R2 cost 10 delay_ms 5 segment LAN1
link R1 R3 cost 10 delay_ms 5 segment LAN1
link R2 R3 cost 10 delay_ms 5 segment LAN1
run_until 60.0
)";
  Scenario sc = load_scenario(text);
  World w(sc, 0);
  w.run(sc.run_until);
  for (RouterId id : {RouterId{1}, RouterId{2}, RouterId{3}}) {
    REQUIRE(w.igp(id).segment_roles().count("LAN1") == 1);
    DrResult roles = w.igp(id).segment_roles().at("LAN1");
    CHECK(roles.dr == RouterId{1});   // highest priority
    CHECK(roles.bdr == RouterId{3});  // runner-up: highest id at priority 100
  }
}

TEST_CASE("stub routers hold intra routes plus exactly one default") {
  const char* text = R"(
param asn_split 32768
node R1 asn 100 prefix 10.1.0.0/16 stub
node R2 asn 100 prefix 10.2.0.0/16
node R9 asn 300 prefix 10.9.0.0/16
link R1 R2 cost 10 delay_ms 5
link R2 R9 cost 10 delay_ms 5
run_until 60.0
)";
  Scenario sc = load_scenario(text);
  World w(sc, 0);
  w.run(sc.run_until);

  std::string dump = w.dump_router(1);
  CHECK(dump ==
        "A 0.0.0.0/0 via R2 cost 10 origin ASBR_DEFAULT\n"
        "A 10.1.0.0/16 via SELF cost 0 origin INTRA\n"
        "A 10.2.0.0/16 via R2 cost 10 origin INTRA\n");
  CHECK(w.bgp(1).table_b().empty());
  CHECK(w.igp(1).lsdb().by_origin.at(1).is_stub);
}

TEST_CASE("cross-domain hellos are counted, not fatal") {
  Scenario sc = load_scenario(read_file(scenario_path("fig6.scn")));
  World w(sc, 0);
  w.run(sc.run_until);
  CHECK(w.counter(3, "IgnoredCrossDomain") > 0);  // R4's hellos at R3
  CHECK(w.counter(4, "IgnoredCrossDomain") > 0);
  CHECK(w.metrics().drops.at("IgnoredCrossDomain") ==
        w.counter(3, "IgnoredCrossDomain") + w.counter(4, "IgnoredCrossDomain"));
}

TEST_CASE("a converged 3-domain chain sends no UPDATE_B for 300 seconds") {
  const char* text = R"(
param asn_split 32768
node R1 asn 100 prefix 10.1.0.0/16
node R2 asn 200 prefix 10.2.0.0/16
node R3 asn 300 prefix 10.3.0.0/16
link R1 R2 cost 10 delay_ms 5
link R2 R3 cost 10 delay_ms 5
run_until 310.0
)";
  Scenario sc = load_scenario(text);
  World w(sc, 0);
  w.run(sc.run_until);

  REQUIRE(w.metrics().phases[0].converged);
  SimTime conv = *w.metrics().phases[0].convergence_ms;
  int update_b_after = 0;
  for (const TraceLine& l : parse_trace(w.trace()))
    if (l.type == "UPDATE_B" && l.t > conv) ++update_b_after;
  CHECK(update_b_after == 0);

  // The chain is fully routed: the middle domain re-exports each edge.
  bool r1_reaches_r3 = false;
  for (const TableBEntry& e : w.bgp(1).table_b())
    if (e.prefix == *parse_prefix("10.3.0.0/16") && e.installed) {
      r1_reaches_r3 = true;
      CHECK(e.as_path == std::vector<Asn>{200 + 32768, 300 + 32768});
    }
  CHECK(r1_reaches_r3);
}

TEST_CASE("inter-stamped traffic entering its domain is handed off to intra mode") {
  // During the startup transient R2 already holds the default route toward
  // the border but not yet R5's prefix, so it stamps the ping INTER; R1, one
  // flood ahead, holds the intra specific and re-stamps at the handoff.
  const char* text = R"(
param asn_split 32768
node R1 asn 200 prefix 10.1.0.0/16
node R2 asn 200 prefix 10.2.0.0/16
node R3 asn 200 prefix 10.3.0.0/16
node R5 asn 200 prefix 10.5.0.0/16
node R4 asn 300 prefix 10.4.0.0/16
link R2 R1 cost 10 delay_ms 5
link R1 R3 cost 10 delay_ms 5
link R3 R5 cost 10 delay_ms 5
link R3 R4 cost 10 delay_ms 5
at 0.022 ping R2 10.5.0.1
run_until 60.0
)";
  Scenario sc = load_scenario(text);
  World w(sc, 0);
  w.run(sc.run_until);

  REQUIRE(w.metrics().pings.size() == 1);
  CHECK(w.metrics().pings[0].delivered);
  CHECK(w.metrics().pings[0].hops == std::vector<RouterId>{2, 1, 3, 5});

  std::vector<TraceLine> data;
  for (const TraceLine& l : parse_trace(w.trace()))
    if (l.type == "DATA") data.push_back(l);
  REQUIRE(data.size() == 3);
  CHECK(data[0].src == "R2");
  CHECK(data[0].cbb);      // leaves the source in inter mode
  CHECK(data[0].asn == 32968);
  CHECK(data[1].src == "R1");
  CHECK(data[1].cbi);      // re-stamped exactly once, at the handoff
  CHECK(data[1].asn == 200);
  CHECK(data[2].cbi);      // and stays intra afterwards
}

TEST_CASE("internal sessions ride the SPF tree across interior routers") {
  const char* text = R"(
param asn_split 32768
node R1 asn 100 prefix 10.1.0.0/16
node R5 asn 100 prefix 10.5.0.0/16
node R2 asn 100 prefix 10.2.0.0/16
node R11 asn 201 prefix 10.11.0.0/16
node R12 asn 202 prefix 10.12.0.0/16
link R1 R5 cost 10 delay_ms 5
link R5 R2 cost 10 delay_ms 5
link R1 R11 cost 10 delay_ms 5
link R2 R12 cost 10 delay_ms 5
run_until 60.0
)";
  Scenario sc = load_scenario(text);
  World w(sc, 0);
  w.run(sc.run_until);

  // The two ASBRs are two hops apart, yet the mesh forms and routes cross it.
  REQUIRE(w.bgp(1).sessions().count(2) == 1);
  CHECK(w.bgp(1).sessions().at(2).kind == PeerKind::INTERNAL);
  CHECK(w.bgp(1).sessions().at(2).state == SessionPhase::ESTABLISHED);
  CHECK(w.bgp(5).sessions().empty());  // the interior router runs no sessions

  bool r1_has_remote = false;
  for (const TableBEntry& e : w.bgp(1).table_b())
    if (e.prefix == *parse_prefix("10.12.0.0/16") && e.learned_internal &&
        e.installed)
      r1_has_remote = true;
  CHECK(r1_has_remote);

  // The relay leg is visible in the trace: UPDATE_B carried hop by hop.
  bool relayed = false;
  for (const TraceLine& l : parse_trace(w.trace()))
    if (l.type == "UPDATE_B" && l.src == "R5") relayed = true;
  CHECK(relayed);
}

TEST_CASE("dual-phase scenario: intra detection beats inter detection") {
  Scenario sc = load_scenario(read_file(scenario_path("dualphase.scn")));
  World w(sc, 0);
  w.run(sc.run_until);
  REQUIRE(w.metrics().phases.size() == 3);
  const PhaseMetrics& intra = w.metrics().phases[1];
  const PhaseMetrics& inter = w.metrics().phases[2];
  REQUIRE(intra.converged);
  REQUIRE(inter.converged);
  CHECK(*intra.convergence_ms <= *inter.convergence_ms);
  // Intra detection is hello-loss bounded, inter is keepalive-hold bounded.
  CHECK(*intra.convergence_ms >= sim_seconds(30));
  CHECK(*intra.convergence_ms <= sim_seconds(41));
  CHECK(*inter.convergence_ms >= sim_seconds(60));
  CHECK(*inter.convergence_ms <= sim_seconds(91));
}
