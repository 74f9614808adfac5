#include "dtmf/dtm.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <unordered_map>

#include "dtmf/csv.hpp"
#include "dtmf/error.hpp"

namespace dtmf {

namespace {

bool is_ascii_punct(unsigned char c) { return c < 0x80 && std::ispunct(c); }
bool is_ascii_digit(unsigned char c) { return c < 0x80 && std::isdigit(c); }
bool is_ascii_space(unsigned char c) { return c < 0x80 && std::isspace(c); }

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail("BadFile", "cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

std::vector<std::string> tokenize(const std::string& text, const PreprocessOptions& opts) {
    // Stripped characters become separators; multi-byte UTF-8 passes through.
    std::string norm;
    norm.reserve(text.size());
    for (unsigned char c : text) {
        if ((opts.strip_punctuation && is_ascii_punct(c)) ||
            (opts.strip_numbers && is_ascii_digit(c))) {
            norm.push_back(' ');
        } else if (opts.lowercase && c < 0x80) {
            norm.push_back(static_cast<char>(std::tolower(c)));
        } else {
            norm.push_back(static_cast<char>(c));
        }
    }

    std::vector<std::string> tokens;
    std::string cur;
    auto flush = [&] {
        if (!cur.empty()) {
            if (!opts.stopwords.count(cur)) tokens.push_back(cur);
            cur.clear();
        }
    };
    for (unsigned char c : norm) {
        if (is_ascii_space(c))
            flush();
        else
            cur.push_back(static_cast<char>(c));
    }
    flush();
    return tokens;
}

BuildResult build_matrix(const std::vector<CorpusDoc>& corpus, const PreprocessOptions& opts) {
    if (corpus.empty()) fail("AllDocumentsEmpty", "corpus contains no documents");
    if (opts.min_term_frequency < 1) fail("BadFormat", "min_term_frequency must be at least 1");

    std::vector<std::map<std::string, double>> doc_counts(corpus.size());
    std::map<std::string, double> totals;
    std::set<std::string> seen_ids;
    for (std::size_t i = 0; i < corpus.size(); ++i) {
        if (!seen_ids.insert(corpus[i].id).second)
            fail("BadFormat", "duplicate document id \"" + corpus[i].id + "\"");
        for (const std::string& tok : tokenize(corpus[i].text, opts)) doc_counts[i][tok] += 1.0;
        for (const auto& [term, n] : doc_counts[i]) totals[term] += n;
    }

    std::vector<std::string> terms;
    std::unordered_map<std::string, std::size_t> term_index;
    for (const auto& [term, total] : totals) {
        if (total + 0.5 >= static_cast<double>(opts.min_term_frequency)) {
            term_index.emplace(term, terms.size());
            terms.push_back(term);
        }
    }

    BuildResult out;
    std::vector<std::size_t> kept;
    for (std::size_t i = 0; i < corpus.size(); ++i) {
        bool any = false;
        for (const auto& [term, n] : doc_counts[i])
            if (term_index.count(term)) {
                any = true;
                break;
            }
        if (any)
            kept.push_back(i);
        else
            out.dropped_docs.push_back(corpus[i].id);
    }
    if (kept.empty()) fail("AllDocumentsEmpty", "every document was filtered away");

    DocTermMatrix& m = out.matrix;
    m.terms = std::move(terms);
    m.counts = DenseMatrix(kept.size(), m.terms.size());
    for (std::size_t r = 0; r < kept.size(); ++r) {
        const CorpusDoc& doc = corpus[kept[r]];
        m.docs.push_back(doc.id);
        if (!doc.label.empty()) m.labels[doc.id] = doc.label;
        for (const auto& [term, n] : doc_counts[kept[r]]) {
            auto it = term_index.find(term);
            if (it != term_index.end()) m.counts(r, it->second) = n;
        }
    }
    return out;
}

std::vector<double> align_query(const DocTermMatrix& m, const std::string& text,
                                const PreprocessOptions& opts) {
    std::vector<std::pair<std::string, double>> counts;
    std::map<std::string, double> acc;
    for (const std::string& tok : tokenize(text, opts)) acc[tok] += 1.0;
    counts.assign(acc.begin(), acc.end());
    return align_query_counts(m, counts);
}

std::vector<double> align_query_counts(const DocTermMatrix& m,
                                       const std::vector<std::pair<std::string, double>>& counts) {
    std::unordered_map<std::string, std::size_t> term_index;
    for (std::size_t j = 0; j < m.terms.size(); ++j) term_index.emplace(m.terms[j], j);

    std::vector<double> q(m.terms.size(), 0.0);
    bool any = false;
    for (const auto& [term, n] : counts) {
        auto it = term_index.find(term);
        if (it == term_index.end()) continue;
        q[it->second] += n;
        if (n != 0.0) any = true;
    }
    if (!any) fail("EmptyQuery", "query shares no terms with the vocabulary");
    return q;
}

Margins margins(const DocTermMatrix& m) {
    if (m.n_docs() == 0 || m.n_terms() == 0) fail("EmptyMatrix", "margins of an empty matrix");
    Margins out;
    out.row_sums.assign(m.n_docs(), 0.0);
    out.col_sums.assign(m.n_terms(), 0.0);
    for (std::size_t i = 0; i < m.n_docs(); ++i)
        for (std::size_t j = 0; j < m.n_terms(); ++j) {
            const double x = m.counts(i, j);
            out.row_sums[i] += x;
            out.col_sums[j] += x;
            out.grand_total += x;
        }
    return out;
}

DocTermMatrix drop_zero_columns(const DocTermMatrix& m, std::vector<std::string>* removed) {
    std::vector<std::size_t> keep;
    for (std::size_t j = 0; j < m.n_terms(); ++j) {
        double s = 0.0;
        for (std::size_t i = 0; i < m.n_docs(); ++i) s += m.counts(i, j);
        if (s > 0.0)
            keep.push_back(j);
        else if (removed)
            removed->push_back(m.terms[j]);
    }
    if (keep.size() == m.n_terms()) return m;

    DocTermMatrix out;
    out.docs = m.docs;
    out.labels = m.labels;
    for (std::size_t j : keep) out.terms.push_back(m.terms[j]);
    out.counts = DenseMatrix(m.n_docs(), keep.size());
    for (std::size_t i = 0; i < m.n_docs(); ++i)
        for (std::size_t jj = 0; jj < keep.size(); ++jj) out.counts(i, jj) = m.counts(i, keep[jj]);
    return out;
}

DocTermMatrix submatrix(const DocTermMatrix& m, const std::vector<std::size_t>& rows) {
    DocTermMatrix out;
    out.terms = m.terms;
    out.counts = DenseMatrix(rows.size(), m.n_terms());
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r] >= m.n_docs()) fail("RankOutOfRange", "document index out of range");
        out.docs.push_back(m.docs[rows[r]]);
        auto it = m.labels.find(m.docs[rows[r]]);
        if (it != m.labels.end()) out.labels.insert(*it);
        for (std::size_t j = 0; j < m.n_terms(); ++j) out.counts(r, j) = m.counts(rows[r], j);
    }
    return out;
}

void save_matrix_csv(const DocTermMatrix& m, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) fail("BadFile", "cannot write " + path);
    CsvRow header{""};
    header.insert(header.end(), m.terms.begin(), m.terms.end());
    write_csv_row(out, header);
    for (std::size_t i = 0; i < m.n_docs(); ++i) {
        CsvRow row{m.docs[i]};
        for (std::size_t j = 0; j < m.n_terms(); ++j)
            row.push_back(std::to_string(static_cast<long long>(std::llround(m.counts(i, j)))));
        write_csv_row(out, row);
    }
}

DocTermMatrix load_matrix_csv(const std::string& path) {
    const auto rows = read_csv_file(path);
    if (rows.size() < 2 || rows[0].size() < 2)
        fail("BadFormat", path + ": expected a header row and at least one document row");

    DocTermMatrix m;
    const std::size_t n_terms = rows[0].size() - 1;
    m.terms.assign(rows[0].begin() + 1, rows[0].end());

    // Columns of a hand-authored file may arrive unsorted; reorder to keep
    // the sorted-terms invariant. Duplicates cannot be reconciled.
    std::vector<std::size_t> order(n_terms);
    for (std::size_t j = 0; j < n_terms; ++j) order[j] = j;
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return m.terms[a] < m.terms[b]; });
    for (std::size_t j = 0; j + 1 < n_terms; ++j)
        if (m.terms[order[j]] == m.terms[order[j + 1]])
            fail("BadFormat", path + ": duplicate term \"" + m.terms[order[j]] + "\"");
    std::sort(m.terms.begin(), m.terms.end());

    m.counts = DenseMatrix(rows.size() - 1, n_terms);
    std::set<std::string> seen;
    for (std::size_t r = 1; r < rows.size(); ++r) {
        if (rows[r].size() != n_terms + 1)
            fail("BadFormat", path + ": row " + std::to_string(r + 1) + " has " +
                                  std::to_string(rows[r].size()) + " cells, expected " +
                                  std::to_string(n_terms + 1));
        const std::string& id = rows[r][0];
        if (!seen.insert(id).second) fail("BadFormat", path + ": duplicate document id \"" + id + "\"");
        m.docs.push_back(id);
        double row_sum = 0.0;
        for (std::size_t j = 0; j < n_terms; ++j) {
            const long long v = parse_int(rows[r][j + 1], path + " row " + std::to_string(r + 1));
            if (v < 0) fail("BadFormat", path + ": negative count for document \"" + id + "\"");
            m.counts(r - 1, order[j]) = static_cast<double>(v);
            row_sum += static_cast<double>(v);
        }
        if (row_sum == 0.0)
            fail("BadFormat", path + ": document \"" + id + "\" has all-zero counts");
    }
    return m;
}

void save_labels_csv(const DocTermMatrix& m, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) fail("BadFile", "cannot write " + path);
    for (const std::string& id : m.docs) {
        auto it = m.labels.find(id);
        if (it != m.labels.end()) write_csv_row(out, {id, it->second});
    }
}

void load_labels_csv(DocTermMatrix& m, const std::string& path) {
    const std::set<std::string> ids(m.docs.begin(), m.docs.end());
    for (const CsvRow& row : read_csv_file(path)) {
        if (row.size() != 2) fail("BadFormat", path + ": labels rows must be (doc id, category)");
        if (!ids.count(row[0]))
            fail("BadFormat", path + ": label for unknown document \"" + row[0] + "\"");
        m.labels[row[0]] = row[1];
    }
}

std::vector<CorpusDoc> load_corpus_dir(const std::string& root) {
    namespace fs = std::filesystem;
    if (!fs::is_directory(root)) fail("BadFile", root + " is not a directory");

    std::vector<std::string> categories;
    for (const auto& e : fs::directory_iterator(root))
        if (e.is_directory()) categories.push_back(e.path().filename().string());
    std::sort(categories.begin(), categories.end());

    std::vector<CorpusDoc> corpus;
    std::set<std::string> seen;
    for (const std::string& cat : categories) {
        std::vector<fs::path> files;
        for (const auto& e : fs::directory_iterator(fs::path(root) / cat))
            if (e.is_regular_file() && e.path().extension() == ".txt") files.push_back(e.path());
        std::sort(files.begin(), files.end());
        for (const fs::path& f : files) {
            CorpusDoc doc;
            doc.id = f.stem().string();
            doc.label = cat;
            doc.text = read_text_file(f.string());
            if (!seen.insert(doc.id).second)
                fail("BadFormat", "document id \"" + doc.id + "\" appears in more than one category");
            corpus.push_back(std::move(doc));
        }
    }
    if (corpus.empty()) fail("AllDocumentsEmpty", "no .txt documents under " + root);
    return corpus;
}

std::set<std::string> load_stopwords(const std::string& path) {
    std::set<std::string> words;
    std::istringstream in(read_text_file(path));
    std::string w;
    while (in >> w) words.insert(w);
    return words;
}

}  // namespace dtmf
