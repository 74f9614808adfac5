#pragma once

#include <cstddef>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "dtmf/matrix.hpp"

namespace dtmf {

struct PreprocessOptions {
    bool lowercase = true;
    bool strip_punctuation = true;
    bool strip_numbers = true;
    std::set<std::string> stopwords;
    std::size_t min_term_frequency = 10;
};

struct CorpusDoc {
    std::string id;
    std::string text;
    std::string label;  // empty means unlabeled
};

// Invariants: terms unique and sorted; counts nonnegative integers (stored
// as doubles); no all-zero rows. build_matrix and load_matrix_csv enforce
// all three.
struct DocTermMatrix {
    std::vector<std::string> docs;
    std::vector<std::string> terms;
    DenseMatrix counts;
    std::map<std::string, std::string> labels;

    std::size_t n_docs() const { return docs.size(); }
    std::size_t n_terms() const { return terms.size(); }
};

struct BuildResult {
    DocTermMatrix matrix;
    std::vector<std::string> dropped_docs;  // ids removed for becoming empty
};

std::vector<std::string> tokenize(const std::string& text, const PreprocessOptions& opts);

BuildResult build_matrix(const std::vector<CorpusDoc>& corpus, const PreprocessOptions& opts);

// Query alignment to a fitted vocabulary; out-of-vocabulary tokens ignored.
std::vector<double> align_query(const DocTermMatrix& m, const std::string& text,
                                const PreprocessOptions& opts);
std::vector<double> align_query_counts(const DocTermMatrix& m,
                                       const std::vector<std::pair<std::string, double>>& counts);

struct Margins {
    std::vector<double> row_sums;
    std::vector<double> col_sums;
    double grand_total = 0.0;
};

Margins margins(const DocTermMatrix& m);

// Removes terms whose column sum is zero (can happen after row subsetting).
DocTermMatrix drop_zero_columns(const DocTermMatrix& m,
                                std::vector<std::string>* removed = nullptr);

// Row subset in the given order; labels restricted to kept docs.
DocTermMatrix submatrix(const DocTermMatrix& m, const std::vector<std::size_t>& rows);

// CSV persistence: header row is a blank cell followed by the terms, each
// data row is the doc id followed by integer counts. Labels live in a
// two-column sidecar (doc id, category).
void save_matrix_csv(const DocTermMatrix& m, const std::string& path);
DocTermMatrix load_matrix_csv(const std::string& path);
void save_labels_csv(const DocTermMatrix& m, const std::string& path);
void load_labels_csv(DocTermMatrix& m, const std::string& path);

// Directory layout <root>/<category>/<docid>.txt; docs ordered by category
// then file name so rebuilds are deterministic.
std::vector<CorpusDoc> load_corpus_dir(const std::string& root);

std::set<std::string> load_stopwords(const std::string& path);

}  // namespace dtmf
