#include <algorithm>
#include <filesystem>
#include <fstream>
#include <random>
#include <set>
#include <sstream>

#include "doctest.h"
#include "graphcomm/error.hpp"
#include "graphcomm/ingest/chunker.hpp"
#include "graphcomm/ingest/derive.hpp"
#include "graphcomm/ingest/entry_parser.hpp"
#include "graphcomm/ingest/normalize.hpp"
#include "graphcomm/ingest/pipeline.hpp"
#include "graphcomm/ingest/xml_repair.hpp"
#include "graphcomm/ingest/xml_tokenizer.hpp"
#include "support/fixture_files.hpp"

namespace fs = std::filesystem;
using namespace graphcomm;
using namespace graphcomm::ingest;
using graphcomm::testing::read_fixture;
using graphcomm::testing::scratch_dir;

namespace {

const char* const kEntryTags[] = {"article", "inproceedings", "phdthesis", "www", "book"};

// Random dblp-like document: abutting entries, occasional blank lines,
// attributes, entities, inline markup.
std::string random_document(std::mt19937& rng, int entries) {
  std::uniform_int_distribution<int> pick(0, 99);
  std::string doc = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n<dblp>\n";
  for (int i = 0; i < entries; ++i) {
    const std::string tag = kEntryTags[pick(rng) % 5];
    doc += "<" + tag + " mdate=\"2020-01-0" + std::to_string(pick(rng) % 9 + 1) +
           "\" key=\"k/" + std::to_string(i) + "\">";
    if (pick(rng) < 70) doc += "\n";
    const int authors = pick(rng) % 4;
    for (int a = 0; a < authors; ++a) {
      doc += "<author>Name " + std::to_string(pick(rng) % 7) + "</author>";
      if (pick(rng) < 80) doc += "\n";
    }
    doc += "<title>T&amp;" + std::to_string(i);
    if (pick(rng) < 20) doc += " <i>x</i>";
    doc += "</title>\n";
    if (pick(rng) < 30) doc += "<year>19" + std::to_string(50 + pick(rng) % 50) + "</year>\n";
    doc += "</" + tag + ">";
    if (pick(rng) < 50) doc += "\n";
    if (pick(rng) < 10) doc += "\n";
  }
  doc += "</dblp>\n";
  return doc;
}

// Oracle for repair on documents without comments or CDATA: a newline is due
// before "<tag" (tag an entry name, followed by space, '>' or '/') when the
// previous output byte is not a newline.
std::string repair_oracle(const std::string& in) {
  std::string out;
  for (std::size_t i = 0; i < in.size(); ++i) {
    if (in[i] == '<') {
      for (const char* tag : {"article", "inproceedings", "proceedings", "book",
                              "incollection", "phdthesis", "mastersthesis", "www",
                              "data"}) {
        const std::string t = tag;
        if (in.compare(i + 1, t.size(), t) == 0 && i + 1 + t.size() < in.size()) {
          const char next = in[i + 1 + t.size()];
          if ((next == ' ' || next == '>' || next == '/' || next == '\n') &&
              !out.empty() && out.back() != '\n') {
            out += '\n';
          }
          break;
        }
      }
    }
    out += in[i];
  }
  return out;
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> lines;
  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t nl = text.find('\n', start);
    std::size_t end = nl == std::string::npos ? text.size() : nl + 1;
    lines.push_back(text.substr(start, end - start));
    start = end;
  }
  return lines;
}

std::string join(const std::vector<std::string>& parts) {
  std::string out;
  for (const auto& p : parts) out += p;
  return out;
}

// Entry count by counting entry start tags; documents here never nest them.
std::size_t count_entry_starts(const std::string& text) {
  std::size_t count = 0;
  XmlTokenizer tok;
  auto sink = [&](const XmlToken& t) {
    if ((t.kind == XmlToken::Kind::kStartTag || t.kind == XmlToken::Kind::kEmptyTag) &&
        is_entry_tag(t.name)) {
      ++count;
    }
  };
  tok.feed(text, sink);
  tok.finish(sink);
  return count;
}

}  // namespace

TEST_CASE("tokenizer reproduces input across arbitrary feed boundaries") {
  const std::string inputs[] = {
      read_fixture("dblp_extract.xml"),
      "<a x='1>2' y=\"<\">t</a><!-- c > d --><![CDATA[ <x> ]]><?pi a?>",
      "a < b <1 </ <!DOCTYPE d [ <!ENTITY e 'x'> ]><r/>",
      "<unterminated attr=\"abc",
      "",
  };
  std::mt19937 rng(7);
  for (const auto& input : inputs) {
    for (int trial = 0; trial < 20; ++trial) {
      XmlTokenizer tok;
      std::string out;
      auto sink = [&](const XmlToken& t) { out.append(t.raw); };
      std::size_t pos = 0;
      while (pos < input.size()) {
        std::size_t step = std::uniform_int_distribution<std::size_t>(1, 9)(rng);
        step = std::min(step, input.size() - pos);
        tok.feed(std::string_view(input).substr(pos, step), sink);
        pos += step;
      }
      tok.finish(sink);
      CHECK(out == input);
    }
  }
}

TEST_CASE("tokenizer classifies markup") {
  std::vector<std::pair<XmlToken::Kind, std::string>> got;
  XmlTokenizer tok;
  auto sink = [&](const XmlToken& t) {
    got.emplace_back(t.kind, std::string(t.kind == XmlToken::Kind::kText ? t.raw : t.name));
  };
  tok.feed("<r a='>'><b/>x<!--<c>--></r>", sink);
  tok.finish(sink);
  using K = XmlToken::Kind;
  REQUIRE(got.size() == 5);
  CHECK(got[0] == std::pair{K::kStartTag, std::string("r")});
  CHECK(got[1] == std::pair{K::kEmptyTag, std::string("b")});
  CHECK(got[2] == std::pair{K::kText, std::string("x")});
  CHECK(got[3].first == K::kMarkup);
  CHECK(got[4] == std::pair{K::kEndTag, std::string("r")});
}

TEST_CASE("repair separates abutting entries") {
  CHECK(repair_xml("</article><article key=\"a\">") == "</article>\n<article key=\"a\">");
  CHECK(repair_xml("") == "");
  const std::string separated = "<dblp>\n<article key=\"a\">\n</article>\n";
  CHECK(repair_xml(separated) == separated);
  // Non-entry elements and entry names used as prefixes are left alone.
  CHECK(repair_xml("<x><articles/><author>a</author>") == "<x><articles/><author>a</author>");
  // Entry-looking text inside comments and CDATA is not markup.
  const std::string hidden = "<r><!-- <article> --><![CDATA[<www>]]></r>";
  CHECK(repair_xml(hidden) == hidden);
}

TEST_CASE("repair of the extract") {
  const std::string input = read_fixture("dblp_extract.xml");
  const std::string once = repair_xml(input);
  CHECK(lines_of(input).size() == 15);
  CHECK(lines_of(once).size() == 18);
  CHECK(once.find("</article>\n<article mdate=\"2017-06-08\" key=\"dblpnote/ellipsis\"") !=
        std::string::npos);
  CHECK(once.find("</article>\n<phdthesis") != std::string::npos);
  CHECK(repair_xml(once) == once);

  std::istringstream in(input);
  std::ostringstream out;
  repair_xml(in, out);
  CHECK(out.str() == once);
}

TEST_CASE("repair matches oracle and is idempotent on random documents") {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const std::string doc = random_document(rng, 1 + trial % 25);
    const std::string once = repair_xml(doc);
    CHECK(once == repair_oracle(doc));
    CHECK(repair_xml(once) == once);
    // Only newlines were added.
    std::string stripped_once = once, stripped_doc = doc;
    std::erase(stripped_once, '\n');
    std::erase(stripped_doc, '\n');
    CHECK(stripped_once == stripped_doc);
  }
}

TEST_CASE("chunks of ten three-line entries with chunk_lines 7") {
  std::string input;
  for (int i = 0; i < 10; ++i) {
    input += "<article key=\"a/" + std::to_string(i) + "\">\n<title>t" + std::to_string(i) +
             "</title>\n</article>\n";
  }
  const auto chunks = split_chunks(input, 7);
  CHECK(join(chunks) == input);
  // The entry straddling line 7 is completed: 9, 9, 9 and 3 lines.
  REQUIRE(chunks.size() == 4);
  for (std::size_t i = 0; i < chunks.size(); ++i) {
    CHECK(lines_of(chunks[i]).size() == (i < 3 ? 9u : 3u));
    CHECK(chunks[i].starts_with("<article "));
    CHECK(chunks[i].ends_with("</article>\n"));
  }
}

TEST_CASE("chunking edge cases") {
  const std::string input = repair_xml(read_fixture("dblp_extract.xml"));
  SUBCASE("limit at or above total lines gives one identical chunk") {
    for (std::size_t limit : {18u, 19u, 1000000u}) {
      const auto chunks = split_chunks(input, limit);
      REQUIRE(chunks.size() == 1);
      CHECK(chunks[0] == input);
    }
  }
  SUBCASE("entry spanning the limit extends the chunk") {
    // Lines 1-3 are prolog, the Turpin thesis spans lines 13-18.
    const auto chunks = split_chunks(input, 14);
    REQUIRE(chunks.size() == 1);
    CHECK(lines_of(chunks[0]).size() == 18);
  }
  SUBCASE("empty input has no chunks") { CHECK(split_chunks("", 5).empty()); }
  SUBCASE("zero limit is rejected") {
    CHECK_THROWS_AS(split_chunks(input, 0), Error);
  }
  SUBCASE("unclosed entry does not swallow the rest") {
    const std::string broken =
        "<article key=\"a\">\n<title>x</title>\n<article key=\"b\">\n<title>y</title>\n"
        "</article>\n";
    const auto chunks = split_chunks(broken, 1);
    REQUIRE(chunks.size() == 2);
    CHECK(chunks[1].starts_with("<article key=\"b\">"));
    CHECK(join(chunks) == broken);
  }
}

TEST_CASE("chunk completeness and entry integrity on random documents") {
  std::mt19937 rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    const std::string doc = repair_xml(random_document(rng, 1 + trial % 30));
    const std::size_t limit = 1 + trial % 13;
    const auto chunks = split_chunks(doc, limit);
    CHECK(join(chunks) == doc);
    std::size_t total_entries = 0;
    for (const auto& chunk : chunks) {
      ParseStats stats;
      parse_entries(chunk, {}, &stats);
      CHECK(stats.malformed == 0);
      total_entries += stats.parsed;
    }
    CHECK(total_entries == count_entry_starts(doc));

    // Feeding in small pieces yields the same chunks.
    std::vector<std::string> streamed(1);
    ChunkSplitter splitter(limit, {[&](std::string_view b) { streamed.back().append(b); },
                                   [&] { streamed.emplace_back(); }});
    for (std::size_t pos = 0; pos < doc.size(); pos += 5) {
      splitter.feed(std::string_view(doc).substr(pos, 5));
    }
    splitter.finish();
    streamed.pop_back();
    CHECK(streamed == chunks);
  }
}

TEST_CASE("chunk files") {
  const auto dir = scratch_dir("chunks");
  std::string input;
  for (int i = 0; i < 4; ++i) input += "<www key=\"w/" + std::to_string(i) + "\">\n</www>\n";
  std::istringstream in(input);
  const auto paths = split_chunks(in, dir, 2);
  REQUIRE(paths.size() == 4);
  CHECK(paths[0].filename() == "chunk_00000.xml");
  CHECK(paths[3].filename() == "chunk_00003.xml");
  std::string joined;
  for (const auto& p : paths) joined += graphcomm::testing::read_file(p);
  CHECK(joined == input);
}

TEST_CASE("parse the Turpin thesis") {
  ParseStats stats;
  const auto entries = parse_entries(read_fixture("dblp_extract.xml"), {}, &stats);
  REQUIRE(entries.size() == 4);
  CHECK(stats.parsed == 4);
  CHECK(stats.malformed == 0);
  CHECK(stats.entries_seen == 4);

  const BibEntry& thesis = entries[3];
  CHECK(thesis.kind == EntryKind::kPhdthesis);
  CHECK(thesis.source_key == "phd/Turpin92");
  CHECK(thesis.attributes.at("mdate") == "2002-01-03");
  CHECK(thesis.values("author") == std::vector<std::string>{"Russell Turpin"});
  CHECK(thesis.values("year") == std::vector<std::string>{"1992"});
  CHECK(thesis.values("school") == std::vector<std::string>{"University of Texas, Austin"});
  CHECK(thesis.first("title") == "Programming Data Structures in Logic.");

  CHECK(entries[0].kind == EntryKind::kArticle);
  CHECK(entries[0].attributes.at("pubtype") == "informal");
  CHECK(entries[1].first("title") == "\xE2\x80\xA6");  // U+2026
  CHECK(entries[2].first("title") == "(was never published)");
  CHECK_FALSE(entries[0].has("author"));
}

TEST_CASE("repeated fields accumulate in order") {
  const auto entries = parse_entries(
      "<article key=\"x/1\"><author>B. Second</author><author>A. First</author>"
      "<title>Two</title></article>");
  REQUIRE(entries.size() == 1);
  CHECK(entries[0].values("author") == std::vector<std::string>{"B. Second", "A. First"});
  const Json j = entries[0].to_import_json();
  CHECK(j["article"]["key"] == "x/1");
  CHECK(j["article"]["title"] == "Two");
  CHECK(j["article"]["author"] == Json::array({"B. Second", "A. First"}));
}

TEST_CASE("entities and encodings") {
  SUBCASE("standard, numeric and Latin-1 names") {
    const auto entries = parse_entries(
        "<www key=\"h/1\"><author>Jos&eacute; &amp; &#x4E2D;&#65;&lt;</author></www>");
    REQUIRE(entries.size() == 1);
    CHECK(entries[0].first("author") == "Jos\xC3\xA9 & \xE4\xB8\xAD" "A<");
  }
  SUBCASE("Latin-1 source bytes") {
    const std::string doc =
        "<?xml version=\"1.0\" encoding=\"ISO-8859-1\"?>\n<dblp><article key=\"a\">"
        "<author>Bj\xF6rn</author></article></dblp>";
    EntryParser parser([](BibEntry&&) {});
    parser.feed(doc);
    parser.finish();
    CHECK(parser.encoding() == SourceEncoding::kLatin1);
    const auto entries = parse_entries(doc);
    REQUIRE(entries.size() == 1);
    CHECK(entries[0].first("author") == "Bj\xC3\xB6rn");
  }
  SUBCASE("explicit encoding wins for headerless chunks") {
    ParseOptions options;
    options.encoding = SourceEncoding::kLatin1;
    const auto entries = parse_entries("<article key=\"a\"><title>\xE9</title></article>", options);
    REQUIRE(entries.size() == 1);
    CHECK(entries[0].first("title") == "\xC3\xA9");
  }
  SUBCASE("detect_encoding") {
    CHECK(detect_encoding("<?xml version='1.0' encoding='iso-8859-1'?>") ==
          SourceEncoding::kLatin1);
    CHECK(detect_encoding("<?xml version=\"1.0\"?>") == SourceEncoding::kUtf8);
    CHECK(detect_encoding("<dblp>") == SourceEncoding::kUtf8);
  }
}

TEST_CASE("undeclared entity") {
  const std::string doc =
      "<dblp><article key=\"a/1\"><title>x &foo; y</title></article>\n"
      "<article key=\"a/2\"><title>ok</title></article></dblp>";
  SUBCASE("passes through and is counted by default") {
    ParseStats stats;
    const auto entries = parse_entries(doc, {}, &stats);
    REQUIRE(entries.size() == 2);
    CHECK(entries[0].first("title") == "x &foo; y");
    CHECK(stats.unknown_entities == 1);
    CHECK(stats.malformed == 0);
  }
  SUBCASE("reject policy drops the entry and continues") {
    ParseOptions options;
    options.unknown_entities = UnknownEntityPolicy::kReject;
    ParseStats stats;
    const auto entries = parse_entries(doc, options, &stats);
    REQUIRE(entries.size() == 1);
    CHECK(entries[0].source_key == "a/2");
    CHECK(stats.malformed == 1);
    CHECK(stats.entries_seen == 2);
  }
}

TEST_CASE("malformed entries are skipped and counted") {
  struct Case {
    const char* name;
    std::string body;
  };
  const Case cases[] = {
      {"bare ampersand", "<article key=\"m\"><title>a & b</title></article>"},
      {"mismatched tag", "<article key=\"m\"><title>a</year></article>"},
      {"stray lt", "<article key=\"m\"><title>a < b</title></article>"},
      {"missing key", "<article mdate=\"x\"><title>a</title></article>"},
      {"bad numeric reference", "<article key=\"m\"><title>&#xZZ;</title></article>"},
      {"broken attribute", "<article key=m><title>a</title></article>"},
  };
  for (const auto& c : cases) {
    CAPTURE(c.name);
    ParseStats stats;
    const auto entries = parse_entries(
        "<dblp>" + c.body + "\n<book key=\"ok\"><title>fine</title></book></dblp>", {}, &stats);
    REQUIRE(entries.size() == 1);
    CHECK(entries[0].source_key == "ok");
    CHECK(stats.malformed == 1);
    CHECK(stats.entries_seen == 2);
  }

  SUBCASE("end of input inside an entry") {
    ParseStats stats;
    const auto entries =
        parse_entries("<book key=\"ok\"></book><article key=\"m\"><title>a", {}, &stats);
    CHECK(entries.size() == 1);
    CHECK(stats.malformed == 1);
  }
  SUBCASE("new entry start inside an unclosed entry") {
    ParseStats stats;
    const auto entries = parse_entries(
        "<article key=\"m\"><title>a</title>\n<article key=\"n\"><title>b</title></article>", {},
        &stats);
    REQUIRE(entries.size() == 1);
    CHECK(entries[0].source_key == "n");
    CHECK(stats.malformed == 1);
  }
}

TEST_CASE("inline markup and field attributes") {
  const auto entries = parse_entries(
      "<www key=\"homepages/1\"><author orcid=\"0000-0001\">  A   B </author>"
      "<title>On <i>x</i><sup>2</sup> things</title><note type=\"affiliation\">U</note>"
      "<url/></www>");
  REQUIRE(entries.size() == 1);
  const auto& e = entries[0];
  CHECK(e.first("title") == "On x2 things");
  CHECK(e.first("author") == "A   B");
  CHECK(e.fields.at("author")[0].attributes.at("orcid") == "0000-0001");
  CHECK(e.fields.at("note")[0].attributes.at("type") == "affiliation");
  CHECK(e.has("url"));
  CHECK(e.first("url").empty());
}

TEST_CASE("entry conservation under corruption") {
  std::mt19937 rng(3);
  for (int trial = 0; trial < 150; ++trial) {
    std::string doc = repair_xml(random_document(rng, 1 + trial % 20));
    // Flip a few bytes to '<' or '&' to break some entries.
    const int flips = trial % 4;
    for (int f = 0; f < flips; ++f) {
      std::size_t at = std::uniform_int_distribution<std::size_t>(40, doc.size() - 1)(rng);
      if (doc[at] != '\n') doc[at] = (f % 2 == 0) ? '&' : '<';
    }
    ParseStats stats;
    const auto entries = parse_entries(doc, {}, &stats);
    CHECK(stats.entries_seen == stats.parsed + stats.malformed);
    CHECK(entries.size() == stats.parsed);
    if (flips == 0) {
      CHECK(stats.malformed == 0);
      CHECK(stats.entries_seen == count_entry_starts(doc));
    }
  }
}

TEST_CASE("normalize_name") {
  CHECK(normalize_name("  Russell \t\n Turpin  ") == "Russell Turpin");
  CHECK(normalize_name("e\xCC\x81") == "\xC3\xA9");  // e + combining acute → é
  CHECK(normalize_name("J\xC3\xBCrgen\xE2\x80\x83M\xC3\xBCller") == "J\xC3\xBCrgen M\xC3\xBCller");
  CHECK(normalize_name("McDonald") != normalize_name("Mcdonald"));
  CHECK(normalize_name("") == "");
  CHECK(fold_case("\xC3\x84pfel") == "\xC3\xA4pfel");
}

TEST_CASE("derive the extract") {
  const auto entries = parse_entries(read_fixture("dblp_extract.xml"));
  GraphStore store;
  const auto vreport = derive_vertices(entries, store);
  CHECK(vreport.vertex_count(collections::kPublication) == 4);
  CHECK(vreport.vertex_count(collections::kAuthor) == 1);
  CHECK(vreport.vertex_count(collections::kSchool) == 1);
  CHECK(vreport.vertex_total() == 6);
  const auto ereport = derive_edges(entries, store);
  CHECK(ereport.edge_count(collections::kAuthorPublication) == 1);
  CHECK(ereport.edge_count(collections::kSchoolPublication) == 1);
  CHECK(ereport.edge_total() == 2);
  CHECK(ereport.skipped_references == 0);
  CHECK(store.vertex_count() == 6);
  CHECK(store.edge_count() == 2);
  CHECK(store.check_integrity().empty());

  bool found_author = false;
  store.for_each_vertex(collections::kAuthor, [&](const VertexRecord& v) {
    found_author = v.graph_name() == "Russell Turpin";
    const auto out = store.neighbors(v.handle, Direction::kOutbound);
    REQUIRE(out.size() == 1);
    CHECK(out[0].edge->label == "HAS_PUBLISHED");
    CHECK(out[0].vertex->attributes.at("key") == "phd/Turpin92");
    CHECK(out[0].vertex->graph_name() == "Programming Data Structures in Logic.");
  });
  CHECK(found_author);
  store.for_each_vertex(collections::kSchool, [&](const VertexRecord& v) {
    CHECK(v.graph_name() == "University of Texas, Austin");
    CHECK(store.degree(v.handle, Direction::kOutbound) == 1);
  });

  std::vector<std::string> titles;
  store.for_each_vertex(collections::kPublication,
                        [&](const VertexRecord& v) { titles.push_back(v.graph_name()); });
  CHECK(titles == std::vector<std::string>{"(error)", "\xE2\x80\xA6", "(was never published)",
                                           "Programming Data Structures in Logic."});

  const auto& graph = store.graph(kDefaultGraphName);
  CHECK(graph.edge_collections.size() == 9);
  CHECK(graph.vertex_collections.size() == 8);
}

TEST_CASE("derivation rules") {
  auto parse = [](const std::string& xml) { return parse_entries("<dblp>" + xml + "</dblp>"); };

  SUBCASE("shared author is deduplicated") {
    const auto entries = parse(
        "<article key=\"a\"><author>Ann  Lee</author><journal>J</journal></article>"
        "<article key=\"b\"><author> Ann Lee</author><journal>J</journal></article>");
    GraphStore store;
    Deriver d(store);
    for (const auto& e : entries) {
      d.add_vertices(e);
      d.add_edges(e);
    }
    CHECK(d.report().vertex_count(collections::kAuthor) == 1);
    CHECK(d.report().vertex_count(collections::kJournal) == 1);
    CHECK(d.report().vertex_count(collections::kPublication) == 2);
    CHECK(d.report().edge_count(collections::kAuthorPublication) == 2);
    CHECK(d.report().edge_count(collections::kJournalPublication) == 2);
  }
  SUBCASE("names differing in case stay distinct") {
    const auto entries = parse(
        "<article key=\"a\"><author>ann lee</author></article>"
        "<article key=\"b\"><author>Ann Lee</author></article>");
    GraphStore store;
    CHECK(derive_vertices(entries, store).vertex_count(collections::kAuthor) == 2);
  }
  SUBCASE("author listed twice in one entry links once") {
    const auto entries = parse("<article key=\"a\"><author>X</author><author>X</author></article>");
    GraphStore store;
    derive_vertices(entries, store);
    CHECK(derive_edges(entries, store).edge_total() == 1);
  }
  SUBCASE("citations and crossrefs run citing to cited; missing targets are skipped") {
    const auto entries = parse(
        "<inproceedings key=\"c/1\"><cite>c/2</cite><cite>...</cite><cite>gone</cite>"
        "<crossref>conf/p</crossref><booktitle>B</booktitle></inproceedings>"
        "<inproceedings key=\"c/2\"><cite>c/1</cite></inproceedings>"
        "<proceedings key=\"conf/p\"><editor>E</editor><publisher>P</publisher>"
        "<series>S</series></proceedings>");
    GraphStore store;
    derive_vertices(entries, store);
    const auto report = derive_edges(entries, store);
    CHECK(report.edge_count(collections::kCited) == 2);
    CHECK(report.edge_count(collections::kCrossref) == 1);
    CHECK(report.edge_count(collections::kEditorPublication) == 1);
    CHECK(report.edge_count(collections::kPublisherPublication) == 1);
    CHECK(report.edge_count(collections::kSeriesPublication) == 1);
    CHECK(report.skipped_references == 2);
    store.for_each_edge(collections::kCrossref, [&](const EdgeRecord& e) {
      CHECK(store.vertex(e.from).attributes.at("key") == "c/1");
      CHECK(store.vertex(e.to).attributes.at("key") == "conf/p");
      CHECK(e.label == "CROSSREFS");
    });
    CHECK(store.check_integrity().empty());
  }
  SUBCASE("entry citing an absent key") {
    const auto entries = parse("<article key=\"a\"><cite>nowhere/1</cite></article>");
    GraphStore store;
    derive_vertices(entries, store);
    const auto report = derive_edges(entries, store);
    CHECK(report.edge_count(collections::kCited) == 0);
    CHECK(report.skipped_references == 1);
  }
  SUBCASE("person records enrich authors and link institutions") {
    const auto entries = parse(
        "<article key=\"a\"><author>Ada Byron</author></article>"
        "<www key=\"homepages/ab\"><author orcid=\"0000-0002\">Ada Byron</author>"
        "<author>Ada Lovelace</author><title>Home Page</title><url>https://x.org</url>"
        "<note type=\"affiliation\">Univ A</note><note type=\"affiliation\">Univ B</note>"
        "</www>");
    GraphStore store;
    Deriver d(store);
    for (const auto& e : entries) {
      d.add_vertices(e);
      d.add_edges(e);
    }
    const auto& r = d.report();
    CHECK(r.person_records == 1);
    CHECK(r.vertex_count(collections::kPublication) == 1);
    CHECK(r.vertex_count(collections::kAuthor) == 1);
    CHECK(r.vertex_count(collections::kInstitution) == 2);
    CHECK(r.edge_count(collections::kInstitutionAuthor) == 2);
    store.for_each_vertex(collections::kAuthor, [&](const VertexRecord& v) {
      CHECK(v.attributes.at("orcid") == "0000-0002");
      CHECK(v.attributes.at("other_names") == Json::array({"Ada Lovelace"}));
      CHECK(v.attributes.at("urls") == Json::array({"https://x.org"}));
      CHECK(store.degree(v.handle, Direction::kInbound) == 2);
    });
  }
  SUBCASE("duplicate keys merge into the first publication") {
    const auto entries = parse(
        "<article key=\"d\"><author>P</author><title>First</title></article>"
        "<article key=\"d\"><author>Q</author><title>Second</title></article>");
    GraphStore store;
    const auto vr = derive_vertices(entries, store);
    CHECK(vr.duplicate_merges == 1);
    CHECK(vr.vertex_count(collections::kPublication) == 1);
    CHECK(derive_edges(entries, store).edge_count(collections::kAuthorPublication) == 2);
    store.for_each_vertex(collections::kPublication,
                          [](const VertexRecord& v) { CHECK(v.graph_name() == "First"); });
  }
  SUBCASE("a second deriver continues from the store") {
    GraphStore store;
    derive_vertices(parse("<article key=\"a\"><author>Z</author></article>"), store);
    const auto more = parse("<article key=\"b\"><author>Z</author><cite>a</cite></article>");
    const auto vr = derive_vertices(more, store);
    CHECK(vr.vertex_count(collections::kAuthor) == 0);
    const auto er = derive_edges(more, store);
    CHECK(er.edge_count(collections::kCited) == 1);
  }
}

TEST_CASE("dedup soundness and integrity on random corpora") {
  std::mt19937 rng(17);
  for (int trial = 0; trial < 30; ++trial) {
    const auto entries = parse_entries(random_document(rng, 5 + trial * 3));
    GraphStore store;
    Deriver d(store);
    for (const auto& e : entries) {
      d.add_vertices(e);
      d.add_edges(e);
    }
    d.resolve_references();
    CHECK(store.check_integrity().empty());
    for (auto name : vertex_collections()) {
      if (name == collections::kPublication) continue;
      std::set<std::string> seen;
      store.for_each_vertex(name, [&](const VertexRecord& v) {
        CHECK(seen.insert(v.graph_name()).second);
      });
    }
    CHECK(d.report().vertex_total() == store.vertex_count());
    CHECK(d.report().edge_total() == store.edge_count());
  }
}

TEST_CASE("ingest_file end to end") {
  const auto work = scratch_dir("ingest_work");
  SUBCASE("extract") {
    GraphStore store;
    IngestOptions options;
    options.work_dir = work;
    options.chunk_lines = 4;
    options.emit_jsonl = work / "entries.jsonl";
    const auto report =
        ingest_file(graphcomm::testing::fixture_path("dblp_extract.xml"), store, options);
    const Json j = report.to_json();
    CHECK(j["publications"] == 4);
    CHECK(j["authors"] == 1);
    CHECK(j["schools"] == 1);
    CHECK(j["edges"] == 2);
    CHECK(j["malformed_entries"] == 0);
    CHECK(report.entries == 4);
    CHECK(lines_of(graphcomm::testing::read_file(work / "entries.jsonl")).size() == 4);
    CHECK_FALSE(fs::exists(work / "chunks"));
  }
  SUBCASE("empty file") {
    const auto empty = work / "empty.xml";
    std::ofstream(empty).close();
    GraphStore store;
    IngestOptions options;
    options.work_dir = work / "w";
    const auto report = ingest_file(empty, store, options);
    CHECK(report.vertex_total() == 0);
    CHECK(report.edge_total() == 0);
    CHECK(report.entries == 0);
  }
  SUBCASE("missing input names the path") {
    GraphStore store;
    IngestOptions options;
    options.work_dir = work / "w";
    try {
      ingest_file(work / "does-not-exist.xml", store, options);
      FAIL("expected an error");
    } catch (const Error& e) {
      CHECK(std::string(e.what()).find("does-not-exist.xml") != std::string::npos);
    }
  }
}
