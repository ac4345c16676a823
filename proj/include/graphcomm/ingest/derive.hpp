#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "graphcomm/ingest/bib_entry.hpp"
#include "graphcomm/store/graph_store.hpp"

namespace graphcomm::ingest {

namespace collections {
inline constexpr std::string_view kAuthor = "author";
inline constexpr std::string_view kPublication = "publication";
inline constexpr std::string_view kEditor = "editor";
inline constexpr std::string_view kPublisher = "publisher";
inline constexpr std::string_view kSeries = "series";
inline constexpr std::string_view kSchool = "school";
inline constexpr std::string_view kJournal = "journal";
inline constexpr std::string_view kInstitution = "affiliation_institution";

inline constexpr std::string_view kAuthorPublication = "author-publication";
inline constexpr std::string_view kEditorPublication = "editor-publication";
inline constexpr std::string_view kPublisherPublication = "publisher-publication";
inline constexpr std::string_view kSchoolPublication = "school-publication";
inline constexpr std::string_view kJournalPublication = "journal-publication";
inline constexpr std::string_view kSeriesPublication = "series-publication";
inline constexpr std::string_view kInstitutionAuthor = "affiliation_institution-author";
inline constexpr std::string_view kCited = "publication-publication_cited";
inline constexpr std::string_view kCrossref = "publication-publication_crossref";
}  // namespace collections

inline constexpr std::string_view kDefaultGraphName =
    "author_publisher_editor_journal_publication_series_affiliation_school_cited_"
    "crossreffed";

std::vector<std::string_view> vertex_collections();
std::vector<std::string_view> edge_collections();

// Creates any missing collection of the bibliographic schema and the default
// named graph over all of them.
void ensure_schema(GraphStore& store);

struct DerivationReport {
  std::map<std::string, std::size_t> vertices;  // created, per collection
  std::map<std::string, std::size_t> edges;     // created, per collection
  std::size_t entries = 0;
  std::size_t person_records = 0;
  std::size_t duplicate_merges = 0;
  std::size_t malformed_entries = 0;
  std::size_t skipped_references = 0;
  std::size_t unknown_entities = 0;

  std::size_t vertex_total() const;
  std::size_t edge_total() const;
  std::size_t vertex_count(std::string_view collection) const;
  std::size_t edge_count(std::string_view collection) const;

  void merge(const DerivationReport& other);
  Json to_json() const;
};

// True for dblp person pages ("homepages/..." www records).
bool is_person_record(const BibEntry& entry);

// Incremental derivation of the bibliographic graph. Name-bearing vertices are
// deduplicated on their normalized name per collection. Publications are
// deduplicated on their source key: a repeated key merges into the first
// publication, keeping its attributes and adding the links of every
// occurrence. Indexes are rebuilt from the store, so a Deriver can continue
// work started by another.
class Deriver {
 public:
  explicit Deriver(GraphStore& store);

  // Creates the publication vertex and all name vertices of `entry`.
  // Returns the publication handle, or "" for person records.
  std::string add_vertices(const BibEntry& entry);

  // Creates the typed edges of `entry`. Citation and crossref targets are
  // queued until resolve_references().
  void add_edges(const BibEntry& entry);

  void resolve_references();

  const DerivationReport& report() const { return report_; }

 private:
  struct PendingReference {
    std::string from;
    std::string target_key;
    bool crossref;
  };

  std::string name_vertex(std::string_view collection, std::string_view raw_name);
  const std::string* find_name(std::string_view collection,
                               std::string_view raw_name) const;
  void add_edge(std::string_view collection, const std::string& from,
                const std::string& to, std::string_view label);
  void add_person_vertices(const BibEntry& entry);
  void add_person_edges(const BibEntry& entry);

  GraphStore& store_;
  DerivationReport report_;
  std::unordered_map<std::string, std::unordered_map<std::string, std::string>> names_;
  std::unordered_map<std::string, std::string> publications_;  // source key → handle
  std::vector<PendingReference> pending_;
};

DerivationReport derive_vertices(std::span<const BibEntry> entries, GraphStore& store);
DerivationReport derive_edges(std::span<const BibEntry> entries, GraphStore& store);

}  // namespace graphcomm::ingest
