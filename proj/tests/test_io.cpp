#include <gtest/gtest.h>

#include <regex>

#include "rect_escape/generate.hpp"
#include "rect_escape/io.hpp"
#include "rect_escape/reductions.hpp"

namespace re = rect_escape;
using re::json;

namespace {

re::Instance sample_rect() {
  re::Instance inst;
  inst.region = {0, 0, 10, 8};
  inst.d = 2;
  inst.k = 2;
  inst.rects = {{1, 1, 1, 3, 3}, {2, 2, 2, 5, 4}, {3, 6, 1, 8, 7}};
  return inst;
}

re::ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const re::EscapeError& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no EscapeError";
  return re::ErrorKind::kInvalidInstance;
}

// Every opening tag is closed in order, ignoring self-closing ones.
bool balanced_xml(const std::string& s) {
  std::vector<std::string> stack;
  const std::regex tag("<(/?)([a-zA-Z]+)[^>]*?(/?)>");
  for (auto it = std::sregex_iterator(s.begin(), s.end(), tag); it != std::sregex_iterator();
       ++it) {
    const auto& m = *it;
    if (m[3].length() > 0) continue;
    if (m[1].length() == 0) {
      stack.push_back(m[2]);
    } else {
      if (stack.empty() || stack.back() != m[2]) return false;
      stack.pop_back();
    }
  }
  return stack.empty();
}

}  // namespace

TEST(Io, RectRoundTrip) {
  const auto inst = sample_rect();
  const json doc = re::to_json(inst);
  EXPECT_EQ(doc["kind"], "rect");
  EXPECT_EQ(doc["format"], 1);
  const auto back = std::get<re::Instance>(re::instance_from_json(doc));
  EXPECT_EQ(re::to_json(back), doc);
  EXPECT_EQ(back.k, 2);
  EXPECT_EQ(back.rects.size(), 3u);
}

TEST(Io, GridAndBoxRoundTrip) {
  re::RandomGridParams gp;
  const auto g = re::random_grid_instance(gp, 3);
  const json gd = re::to_json(g);
  EXPECT_EQ(re::to_json(std::get<re::GridInstance>(re::instance_from_json(gd))), gd);
  re::RandomBoxParams bp;
  const auto b = re::random_box_instance(bp, 3);
  const json bd = re::to_json(b);
  EXPECT_EQ(bd["kind"], "box3");
  EXPECT_EQ(re::to_json(std::get<re::Instance3>(re::instance_from_json(bd))), bd);
}

TEST(Io, RejectsUnknownFieldsAndBadHeaders) {
  json doc = re::to_json(sample_rect());
  json extra = doc;
  extra["colour"] = "red";
  EXPECT_EQ(kind_of([&] { re::instance_from_json(extra); }), re::ErrorKind::kValidation);
  json inner = doc;
  inner["rects"][0]["label"] = "x";
  EXPECT_EQ(kind_of([&] { re::instance_from_json(inner); }), re::ErrorKind::kValidation);
  json version = doc;
  version["format"] = 2;
  EXPECT_EQ(kind_of([&] { re::instance_from_json(version); }), re::ErrorKind::kValidation);
  json kind = doc;
  kind["kind"] = "polygon";
  EXPECT_EQ(kind_of([&] { re::instance_from_json(kind); }), re::ErrorKind::kValidation);
  json coords = doc;
  coords["rects"][0]["min"] = {1.5, 2};
  EXPECT_EQ(kind_of([&] { re::instance_from_json(coords); }), re::ErrorKind::kValidation);
  json empty = doc;
  empty["rects"][0]["max"] = {1, 1};
  EXPECT_EQ(kind_of([&] { re::instance_from_json(empty); }), re::ErrorKind::kInvalidInstance);
}

TEST(Io, DigestIsStableAndSensitive) {
  const auto inst = sample_rect();
  const auto a = re::instance_digest(inst);
  EXPECT_EQ(a.size(), 64u);
  EXPECT_EQ(a, re::instance_digest(std::get<re::Instance>(re::instance_from_json(re::to_json(inst)))));
  auto moved = inst;
  moved.rects[0].x_max = 4;
  EXPECT_NE(a, re::instance_digest(moved));
  // SHA-256 of the empty string.
  EXPECT_EQ(re::sha256_hex(""),
            "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
}

TEST(Io, AssignmentRoundTrip) {
  re::Assignment a = {{1, re::Direction::kUp}, {2, std::nullopt}, {3, re::Direction::kLeft}};
  const json arr = re::assignment_to_json(a);
  EXPECT_EQ(arr[0]["dir"], "up");
  EXPECT_EQ(arr[1]["dir"], "none");
  EXPECT_EQ(re::assignment_from_json(arr), a);
  json dup = arr;
  dup.push_back({{"id", 1}, {"dir", "down"}});
  EXPECT_EQ(kind_of([&] { re::assignment_from_json(dup); }), re::ErrorKind::kValidation);
  json bad = arr;
  bad[0]["dir"] = "north";
  EXPECT_EQ(kind_of([&] { re::assignment_from_json(bad); }), re::ErrorKind::kValidation);
  re::Assignment3 b = {{4, re::Direction3::kZMinus}};
  EXPECT_EQ(re::assignment3_from_json(re::assignment_to_json(b)), b);
}

TEST(Io, VerifyPassFailAndPairing) {
  const auto inst = sample_rect();
  const re::AnyInstance any = inst;
  const json empty = re::assignment_document(any, json::array());
  const auto ok = re::verify(any, empty);
  EXPECT_TRUE(ok.pass);
  EXPECT_EQ(ok.max_density, 2);
  EXPECT_EQ(ok.extended, 0);
  // Rect 3 sweeping left covers the cell where rects 1 and 2 overlap.
  re::Assignment a = {{1, re::Direction::kRight}, {2, re::Direction::kRight},
                      {3, re::Direction::kLeft}};
  const auto fail = re::verify(any, re::assignment_document(any, re::assignment_to_json(a)));
  EXPECT_FALSE(fail.pass);
  EXPECT_EQ(fail.max_density, 3);
  EXPECT_EQ(fail.tallies.at("internal_horizontal"), 3);
  auto other = inst;
  other.d = 3;
  EXPECT_EQ(kind_of([&] { re::verify(other, empty); }), re::ErrorKind::kPairing);
  json unknown = re::assignment_document(any, json::array({{{"id", 42}, {"dir", "up"}}}));
  EXPECT_EQ(kind_of([&] { re::verify(any, unknown); }), re::ErrorKind::kDomainMismatch);
  const json report = re::to_json(fail);
  EXPECT_EQ(report["kind"], "verify-report");
  EXPECT_EQ(report["pass"], false);
}

TEST(Io, FormulaAndGraphDocuments) {
  const re::NaeFormula phi{3, {{1, 2}, {1, 2, 3}}};
  const auto back = re::formula_from_json(re::to_json(phi));
  EXPECT_EQ(back.num_vars, 3);
  EXPECT_EQ(back.clauses, phi.clauses);
  const re::MccGraph g{2, 2, {{1, 2}, {3, 4}}, {{1, 3}}};
  const auto gb = re::graph_from_json(re::to_json(g));
  EXPECT_EQ(gb.parts, g.parts);
  EXPECT_EQ(gb.edges, g.edges);
  json bad = re::to_json(phi);
  bad["clauses"] = {{1, 1}};
  EXPECT_THROW(re::formula_from_json(bad), re::EscapeError);
}

TEST(Io, RolesDocument) {
  const auto art = re::reduce_naesat(re::NaeFormula{1, {}});
  const json doc = re::roles_document(art.instance, art.roles, art.notes);
  EXPECT_EQ(doc["instance_digest"], re::instance_digest(art.instance));
  EXPECT_EQ(re::roles_from_json(doc), art.roles);
}

TEST(Io, SvgIsWellFormed) {
  const auto inst = sample_rect();
  re::Assignment a = {{3, re::Direction::kUp}};
  const json doc = re::assignment_document(inst, re::assignment_to_json(a));
  re::RoleMap roles = {{1, "guard-left#1"}, {2, "a<b>"}};
  const std::string svg = re::render_svg(inst, &doc, roles);
  EXPECT_EQ(svg.rfind("<svg", 0), 0u);
  EXPECT_NE(svg.find("</svg>"), std::string::npos);
  EXPECT_TRUE(balanced_xml(svg));
  EXPECT_NE(svg.find("a&lt;b&gt;"), std::string::npos);
  const auto art = re::reduce_mcc(re::MccGraph{2, 1, {{1}, {2}}, {{1, 2}}});
  EXPECT_TRUE(balanced_xml(re::render_svg(art.instance, nullptr, art.roles)));
  re::RandomBoxParams bp;
  EXPECT_TRUE(balanced_xml(re::render_svg(re::random_box_instance(bp, 1), nullptr, {})));
}
