#include "vaqw/walk_file.hpp"

#include <fstream>
#include <map>
#include <sstream>

#include <json.hpp>

namespace vaqw {

namespace {

using json = nlohmann::ordered_json;

[[noreturn]] void fail(const std::string& path, const std::string& message) {
  throw WalkFileError("walk file: " + path + ": " + message);
}

std::string child(const std::string& path, std::string_view key) { return path.empty() ? std::string(key) : path + "." + std::string(key); }
std::string item(const std::string& path, std::size_t i) { return path + "[" + std::to_string(i) + "]"; }

const json& field(const json& obj, std::string_view key, const std::string& path) {
  if (!obj.is_object()) fail(path.empty() ? "document" : path, "expected an object");
  const auto it = obj.find(std::string(key));
  if (it == obj.end()) fail(child(path, key), "missing field");
  return *it;
}

const json& array(const json& v, const std::string& path) {
  if (!v.is_array()) fail(path, "expected an array");
  return v;
}

std::size_t count(const json& v, const std::string& path) {
  if (!v.is_number_integer() || v.get<std::int64_t>() < 0) fail(path, "expected a non-negative integer");
  return v.get<std::size_t>();
}

std::string text(const json& v, const std::string& path) {
  if (!v.is_string()) fail(path, "expected a string");
  return v.get<std::string>();
}

Word word(const json& v, const Alphabet& al, const std::string& path) {
  Word w;
  const json& arr = array(v, path);
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const std::string name = text(arr[i], item(path, i));
    const auto g = al.find(name);
    if (!g) fail(item(path, i), "unknown generator '" + name + "'");
    w.push_back(*g);
  }
  return w;
}

ComplexMatrix matrix(const json& v, std::size_t s, const std::string& path) {
  const json& rows = array(v, path);
  if (rows.size() != s) fail(path, "expected " + std::to_string(s) + " rows");
  ComplexMatrix m(s, s);
  for (std::size_t r = 0; r < s; ++r) {
    const json& cols = array(rows[r], item(path, r));
    if (cols.size() != s) fail(item(path, r), "expected " + std::to_string(s) + " entries");
    for (std::size_t c = 0; c < s; ++c) {
      const std::string at = item(item(path, r), c);
      const json& z = array(cols[c], at);
      if (z.size() != 2 || !z[0].is_number() || !z[1].is_number()) fail(at, "expected [re, im]");
      m(r, c) = Complex(z[0].get<double>(), z[1].get<double>());
    }
  }
  return m;
}

json words_json(const std::vector<Word>& words, const Alphabet& al) {
  json out = json::array();
  for (const auto& w : words) out.push_back(al.spell(w));
  return out;
}

json matrix_json(const ComplexMatrix& m) {
  json rows = json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(json::array({m(r, c).real(), m(r, c).imag()}));
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string line_context(std::string_view text_in, std::size_t byte) {
  std::size_t line = 1;
  std::size_t column = 1;
  for (std::size_t i = 0; i < byte && i < text_in.size(); ++i) {
    if (text_in[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(column);
}

}  // namespace

WalkFile parse_walk_file(std::string_view text_in) {
  json doc;
  try {
    doc = json::parse(text_in);
  } catch (const json::parse_error& e) {
    fail(line_context(text_in, e.byte), "malformed JSON (" + std::string(e.what()) + ")");
  }
  if (!doc.is_object()) fail("document", "expected an object");

  const std::size_t d = count(field(doc, "dimension", ""), "dimension");
  const std::size_t l = count(field(doc, "index", ""), "index");
  const std::size_t s = count(field(doc, "coin_dim", ""), "coin_dim");
  if (l == 0) fail("index", "must be positive");
  if (s == 0) fail("coin_dim", "must be positive");

  std::vector<std::pair<std::string, std::string>> gens;
  const json& gen_arr = array(field(doc, "generators", ""), "generators");
  for (std::size_t i = 0; i < gen_arr.size(); ++i) {
    const std::string p = item("generators", i);
    gens.emplace_back(text(field(gen_arr[i], "name", p), child(p, "name")),
                      text(field(gen_arr[i], "inverse", p), child(p, "inverse")));
  }
  Alphabet al;
  try {
    al = Alphabet(gens);
  } catch (const std::invalid_argument& e) {
    fail("generators", e.what());
  }

  GroupPresentation pres{al, {}};
  const json& rel_arr = array(field(doc, "relators", ""), "relators");
  for (std::size_t i = 0; i < rel_arr.size(); ++i) pres.relators.push_back(word(rel_arr[i], al, item("relators", i)));

  std::vector<Word> reps;
  const json& rep_arr = array(field(doc, "representatives", ""), "representatives");
  if (rep_arr.size() != l) fail("representatives", "expected " + std::to_string(l) + " words (index)");
  for (std::size_t i = 0; i < rep_arr.size(); ++i) reps.push_back(word(rep_arr[i], al, item("representatives", i)));

  std::vector<Word> basis;
  if (doc.contains("basis")) {
    const json& b_arr = array(doc["basis"], "basis");
    for (std::size_t i = 0; i < b_arr.size(); ++i) basis.push_back(word(b_arr[i], al, item("basis", i)));
  }

  std::vector<TableRow> rows;
  const json& t_arr = array(field(doc, "table", ""), "table");
  for (std::size_t i = 0; i < t_arr.size(); ++i) {
    const std::string p = item("table", i);
    const json& r = t_arr[i];
    const std::string g = text(field(r, "generator", p), child(p, "generator"));
    const auto gid = al.find(g);
    if (!gid) fail(child(p, "generator"), "unknown generator '" + g + "'");
    TableRow row{*gid, count(field(r, "coset", p), child(p, "coset")), count(field(r, "target", p), child(p, "target")),
                 {}};
    const std::string sp = child(p, "shift");
    const json& shift = array(field(r, "shift", p), sp);
    for (std::size_t a = 0; a < shift.size(); ++a) {
      if (!shift[a].is_number_integer()) fail(item(sp, a), "expected an integer");
      row.shift.push_back(shift[a].get<std::int64_t>());
    }
    rows.push_back(std::move(row));
  }
  TilingData tiling;
  try {
    tiling = TilingData(al, d, reps, rows, basis);
  } catch (const std::invalid_argument& e) {
    fail("table", e.what());
  }

  std::vector<ComplexMatrix> mats(al.size());
  const json& trans = field(doc, "transitions", "");
  if (!trans.is_object()) fail("transitions", "expected an object keyed by generator");
  for (const auto& [name, value] : trans.items()) {
    const auto g = al.find(name);
    if (!g) fail(child("transitions", name), "unknown generator");
    mats[index_of(*g)] = matrix(value, s, child("transitions", name));
  }
  for (auto g : al.all()) {
    if (!trans.contains(al.name(g))) fail(child("transitions", al.name(g)), "missing field");
  }

  WalkFile out{WalkSpec(pres, tiling, TransitionFamily(al, s, std::move(mats))), std::nullopt};

  if (doc.contains("isotropy")) {
    const json& iso = doc["isotropy"];
    const json& map_json = field(iso, "map", "isotropy");
    if (!map_json.is_object()) fail("isotropy.map", "expected an object");
    std::map<std::string, std::string> mapping;
    for (const auto& [from, to] : map_json.items()) mapping[from] = text(to, child("isotropy.map", from));
    try {
      out.isotropy =
          IsotropySpec::from_names(al, mapping, matrix(field(iso, "coin_unitary", "isotropy"), s, "isotropy.coin_unitary"));
    } catch (const WalkFileError&) {
      throw;
    } catch (const std::invalid_argument& e) {
      fail("isotropy.map", e.what());
    }
  }
  return out;
}

WalkFile load_walk_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw WalkFileError("walk file: cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_walk_file(buf.str());
}

std::string export_walk_file(const WalkSpec& w, const std::optional<IsotropySpec>& isotropy) {
  const Alphabet& al = w.alphabet();
  const TilingData& t = w.tiling();
  json doc;
  doc["dimension"] = w.dimension();
  doc["index"] = w.index();
  doc["coin_dim"] = w.coin_dim();
  json gens = json::array();
  for (auto g : al.positive()) gens.push_back({{"name", al.name(g)}, {"inverse", al.name(al.inverse(g))}});
  doc["generators"] = std::move(gens);
  doc["relators"] = words_json(w.presentation().relators, al);
  doc["representatives"] = words_json(t.rep_words(), al);
  if (t.has_basis_words()) doc["basis"] = words_json(t.basis_words(), al);
  json table = json::array();
  for (const auto& r : t.rows()) {
    table.push_back({{"generator", al.name(r.generator)}, {"coset", r.coset}, {"target", r.target}, {"shift", r.shift}});
  }
  doc["table"] = std::move(table);
  json trans = json::object();
  for (auto g : al.all()) trans[al.name(g)] = matrix_json(w.matrix(g));
  doc["transitions"] = std::move(trans);
  if (isotropy) {
    json map_json = json::object();
    for (auto g : al.positive()) map_json[al.name(g)] = al.name(isotropy->permutation.at(index_of(g)));
    doc["isotropy"] = {{"map", std::move(map_json)}, {"coin_unitary", matrix_json(isotropy->coin_unitary)}};
  }
  return doc.dump(2) + "\n";
}

void save_walk_file(const std::filesystem::path& path, const WalkSpec& w, const std::optional<IsotropySpec>& isotropy) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw WalkFileError("walk file: cannot write " + path.string());
  out << export_walk_file(w, isotropy);
}

}  // namespace vaqw
