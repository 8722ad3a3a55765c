#include <sstream>

#include "doctest.h"
#include "ndstore/bench.hpp"
#include "ndstore/io.hpp"

using namespace nds;

TEST_CASE("csv: round trip preserves kinds and coordinates") {
  std::vector<ParetoElement> elems = {
      ParetoElement::point(5, 11),
      ParetoElement::segment(41.0 / 6.0, 11, 7, 10),
      ParetoElement::segment(8, 7, 28.0 / 3.0, 55.0 / 9.0),
  };
  std::stringstream ss;
  export_csv(elems, ss);

  std::string header;
  std::getline(ss, header);
  CHECK(header == "kind,x1,y1,x2,y2");
  ss.seekg(0);

  auto back = import_csv(ss);
  REQUIRE(back.size() == elems.size());
  for (size_t i = 0; i < elems.size(); ++i) {
    CHECK(back[i].kind == elems[i].kind);
    CHECK(back[i].x1 == doctest::Approx(elems[i].x1).epsilon(1e-9));
    CHECK(back[i].y1 == doctest::Approx(elems[i].y1).epsilon(1e-9));
    CHECK(back[i].x2 == doctest::Approx(elems[i].x2).epsilon(1e-9));
    CHECK(back[i].y2 == doctest::Approx(elems[i].y2).epsilon(1e-9));
  }
}

TEST_CASE("csv: import rejects malformed rows") {
  std::stringstream ss("kind,x1,y1,x2,y2\nX,1,2,3,4\n");
  CHECK_THROWS(import_csv(ss));
  std::stringstream ss2("kind,x1,y1,x2,y2\nP,1,2\n");
  CHECK_THROWS(import_csv(ss2));
}

TEST_CASE("svg: produces a well-formed document with one shape per element") {
  std::vector<ParetoElement> elems = {
      ParetoElement::point(1, 2),
      ParetoElement::segment(2, 2, 3, 1),
  };
  std::stringstream ss;
  write_svg(elems, ss);
  auto s = ss.str();
  CHECK(s.find("<svg") != std::string::npos);
  CHECK(s.find("</svg>") != std::string::npos);
  CHECK(s.find("<circle") != std::string::npos);
  CHECK(s.find("<line") != std::string::npos);
}

TEST_CASE("bench: geometric mean and policy parsing") {
  CHECK(geometric_mean({1.0, 4.0}) == doctest::Approx(2.0));
  CHECK(geometric_mean({3.0}) == doctest::Approx(3.0));

  RebalanceMode m;
  CHECK(parse_policy("a3", m));
  CHECK(m == RebalanceMode::A3);
  CHECK(parse_policy("A0", m));
  CHECK(m == RebalanceMode::A0);
  CHECK_FALSE(parse_policy("a9", m));
  CHECK_FALSE(parse_policy("", m));
}

TEST_CASE("bench: a small tree-vs-list run completes and summarizes") {
  ExperimentSpec spec;
  spec.n = 300;
  spec.mu = 0.5;
  spec.trials = 2;
  spec.seed = 5;
  spec.structure = StructureChoice::Both;
  spec.policies = {RebalanceMode::A1, RebalanceMode::A4};

  std::vector<ParetoElement> final_set;
  auto records = run(spec, &final_set);
  // 2 policies * 2 trials for the tree, plus 2 list trials
  CHECK(records.size() == 6);
  CHECK(!final_set.empty());
  for (const auto& r : records) {
    CHECK(r.inserts_processed == spec.n);
    CHECK(r.final_nodes > 0);
    if (r.structure == "tree") CHECK(r.final_depth > 0);
  }

  auto rows = summarize(records);
  CHECK(rows.size() == 3);
  for (const auto& row : rows) {
    CHECK(row.trials == 2);
    CHECK(row.timeouts == 0);
    CHECK(row.nodes_mean > 0);
  }

  std::stringstream rs, ss;
  write_records_csv(records, rs);
  write_summary_csv(rows, ss);
  CHECK(rs.str().find("structure,policy,n,mu,seed,elapsed_ms,final_depth,"
                      "final_nodes,inserts_processed") == 0);
  CHECK(ss.str().find("structure,policy") == 0);
}
