#include "dtmf/model_io.hpp"

#include <fstream>
#include <map>
#include <sstream>

#include "json.hpp"

#include "dtmf/csv.hpp"
#include "dtmf/error.hpp"

namespace dtmf {

namespace {

using nlohmann::json;

void write_block(std::ostream& out, const std::string& name, const DenseMatrix& m) {
    out << "#block " << name << ' ' << m.rows() << ' ' << m.cols() << '\n';
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) {
            if (j) out << ',';
            out << format_double(m(i, j));
        }
        out << '\n';
    }
}

void write_block(std::ostream& out, const std::string& name, const std::vector<double>& v) {
    DenseMatrix m(v.empty() ? 0 : 1, v.size());
    for (std::size_t j = 0; j < v.size(); ++j) m(0, j) = v[j];
    write_block(out, name, m);
}

struct ModelFile {
    json header;
    std::map<std::string, DenseMatrix> blocks;
};

ModelFile read_model_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail("BadFile", "cannot open " + path);

    ModelFile mf;
    std::string line;
    if (!std::getline(in, line)) fail("BadFormat", path + ": empty model file");
    mf.header = json::parse(line, nullptr, false);
    if (mf.header.is_discarded() || !mf.header.is_object())
        fail("BadFormat", path + ": header is not valid JSON");

    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream head(line);
        std::string tag, name;
        std::size_t rows = 0, cols = 0;
        head >> tag >> name >> rows >> cols;
        if (tag != "#block" || head.fail())
            fail("BadFormat", path + ": expected a #block line, got \"" + line + "\"");
        DenseMatrix m(rows, cols);
        for (std::size_t i = 0; i < rows; ++i) {
            if (!std::getline(in, line))
                fail("BadFormat", path + ": block " + name + " is truncated");
            std::size_t j = 0, start = 0;
            while (start <= line.size()) {
                std::size_t comma = line.find(',', start);
                if (comma == std::string::npos) comma = line.size();
                if (j >= cols) fail("BadFormat", path + ": block " + name + " has extra cells");
                m(i, j++) = parse_double(line.substr(start, comma - start),
                                         path + " block " + name);
                start = comma + 1;
            }
            if (j != cols) fail("BadFormat", path + ": block " + name + " has missing cells");
        }
        mf.blocks.emplace(name, std::move(m));
    }
    return mf;
}

const DenseMatrix& need_block(const ModelFile& mf, const std::string& name,
                              const std::string& path) {
    auto it = mf.blocks.find(name);
    if (it == mf.blocks.end()) fail("BadFormat", path + ": missing block " + name);
    return it->second;
}

std::vector<double> block_vector(const ModelFile& mf, const std::string& name,
                                 const std::string& path) {
    const DenseMatrix& m = need_block(mf, name, path);
    if (m.rows() == 0) return {};
    if (m.rows() != 1) fail("BadFormat", path + ": block " + name + " is not a vector");
    std::vector<double> v(m.cols());
    for (std::size_t j = 0; j < m.cols(); ++j) v[j] = m(0, j);
    return v;
}

std::vector<std::string> string_list(const json& j, const std::string& key,
                                     const std::string& path) {
    if (!j.contains(key) || !j[key].is_array())
        fail("BadFormat", path + ": header lacks the " + key + " list");
    std::vector<std::string> out;
    for (const auto& e : j[key]) out.push_back(e.get<std::string>());
    return out;
}

json spec_to_json(const WeightSpec& s) {
    return json{{"kind", to_string(s.kind)}, {"log_base", s.log_base}};
}

WeightSpec spec_from_json(const json& j, const std::string& path) {
    if (!j.is_object() || !j.contains("kind"))
        fail("BadFormat", path + ": malformed weighting spec");
    WeightSpec s;
    s.kind = weight_kind_from_string(j["kind"].get<std::string>());
    if (j.contains("log_base")) s.log_base = j["log_base"].get<double>();
    return s;
}

}  // namespace

void save_lsa(const LsaModel& model, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) fail("BadFile", "cannot write " + path);

    json header{{"format", "dtmf-model"},
                {"type", "lsa"},
                {"spec", spec_to_json(model.spec)},
                {"docs", model.doc_ids},
                {"terms", model.term_strings},
                {"k", model.k},
                {"k_max", model.max_k()},
                {"effective_rank", model.svd.effective_rank}};
    out << header.dump() << '\n';
    write_block(out, "u", model.svd.u);
    write_block(out, "sigma", model.svd.sigma);
    write_block(out, "v", model.svd.v);
    write_block(out, "global_weights", model.weights.global_weights);
    write_block(out, "doc_frequencies", model.weights.doc_frequencies);
}

LsaModel load_lsa(const std::string& path) {
    const ModelFile mf = read_model_file(path);
    if (mf.header.value("type", "") != "lsa") fail("BadFormat", path + ": not an lsa model");

    LsaModel m;
    m.spec = spec_from_json(mf.header.contains("spec") ? mf.header["spec"] : json(), path);
    m.doc_ids = string_list(mf.header, "docs", path);
    m.term_strings = string_list(mf.header, "terms", path);
    m.k = mf.header.value("k", std::size_t{1});
    m.svd.u = need_block(mf, "u", path);
    m.svd.sigma = block_vector(mf, "sigma", path);
    m.svd.v = need_block(mf, "v", path);
    m.svd.effective_rank = mf.header.value("effective_rank", std::size_t{0});
    m.weights.spec = m.spec;
    m.weights.global_weights = block_vector(mf, "global_weights", path);
    m.weights.doc_frequencies = block_vector(mf, "doc_frequencies", path);

    if (m.svd.u.rows() != m.doc_ids.size() || m.svd.v.rows() != m.term_strings.size() ||
        m.svd.u.cols() != m.svd.sigma.size() || m.svd.v.cols() != m.svd.sigma.size())
        fail("BadFormat", path + ": block shapes disagree with the header");
    return m;
}

void save_ca(const CaModel& model, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) fail("BadFile", "cannot write " + path);

    json header{{"format", "dtmf-model"},
                {"type", "ca"},
                {"docs", model.doc_ids},
                {"terms", model.term_strings},
                {"rank", model.rank},
                {"total_inertia", model.total_inertia},
                {"effective_rank", model.svd.effective_rank}};
    out << header.dump() << '\n';
    write_block(out, "p", model.p);
    write_block(out, "row_masses", model.row_masses);
    write_block(out, "col_masses", model.col_masses);
    write_block(out, "u", model.svd.u);
    write_block(out, "sigma", model.svd.sigma);
    write_block(out, "v", model.svd.v);
    write_block(out, "phi", model.phi);
    write_block(out, "gamma", model.gamma);
}

CaModel load_ca(const std::string& path) {
    const ModelFile mf = read_model_file(path);
    if (mf.header.value("type", "") != "ca") fail("BadFormat", path + ": not a ca model");

    CaModel m;
    m.doc_ids = string_list(mf.header, "docs", path);
    m.term_strings = string_list(mf.header, "terms", path);
    m.rank = mf.header.value("rank", std::size_t{0});
    m.total_inertia = mf.header.value("total_inertia", 0.0);
    m.p = need_block(mf, "p", path);
    m.row_masses = block_vector(mf, "row_masses", path);
    m.col_masses = block_vector(mf, "col_masses", path);
    m.svd.u = need_block(mf, "u", path);
    m.svd.sigma = block_vector(mf, "sigma", path);
    m.svd.v = need_block(mf, "v", path);
    m.svd.effective_rank = mf.header.value("effective_rank", std::size_t{0});
    m.phi = need_block(mf, "phi", path);
    m.gamma = need_block(mf, "gamma", path);

    const std::size_t nd = m.doc_ids.size();
    const std::size_t nt = m.term_strings.size();
    if (m.p.rows() != nd || m.p.cols() != nt || m.row_masses.size() != nd ||
        m.col_masses.size() != nt || m.phi.rows() != nd || m.gamma.rows() != nt ||
        m.phi.cols() != m.rank || m.gamma.cols() != m.rank)
        fail("BadFormat", path + ": block shapes disagree with the header");
    return m;
}

std::string model_type(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail("BadFile", "cannot open " + path);
    std::string line;
    if (!std::getline(in, line)) fail("BadFormat", path + ": empty model file");
    const json header = json::parse(line, nullptr, false);
    if (header.is_discarded() || !header.is_object() || !header.contains("type"))
        fail("BadFormat", path + ": header is not a model header");
    return header["type"].get<std::string>();
}

}  // namespace dtmf
