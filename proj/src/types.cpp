#include "pipeserve/types.hpp"

namespace pipeserve {

namespace {
struct KindInfo {
    TransformKind kind;
    const char* name;
    int arity;          // -1 = variadic (>= 2)
    bool user;
    bool predictor;
    bool breaker;
    bool compute;
    bool has_params;
};

// Static transform annotations. These drive stage building and physical
// implementation selection; annotations are data, not code.
constexpr KindInfo kKinds[] = {
    {TransformKind::CsvSource, "csv_source", 0, true, false, false, false, true},
    {TransformKind::Select, "select", 1, true, false, false, false, true},
    {TransformKind::Tokenize, "tokenize", 1, true, false, false, false, true},
    {TransformKind::CharNgram, "char_ngram", 1, true, false, false, false, true},
    {TransformKind::WordNgram, "word_ngram", 1, true, false, false, false, true},
    {TransformKind::Concat, "concat", -1, true, false, true, false, false},
    {TransformKind::NormalizeL2, "normalize_l2", 1, true, false, true, false, false},
    {TransformKind::PcaProject, "pca_project", 1, true, false, false, true, true},
    {TransformKind::KMeansFeaturize, "kmeans_featurize", 1, true, false, false, true, true},
    {TransformKind::TreeEnsemble, "tree_ensemble", 1, true, true, false, true, true},
    {TransformKind::LinearBinaryClassifier, "linear_binary", 1, true, true, false, true, true},
    {TransformKind::PartialLinear, "partial_linear", 1, false, false, false, true, true},
    {TransformKind::LinearJoin, "linear_join", -1, false, true, false, false, true},
};

const KindInfo& info(TransformKind k) { return kKinds[static_cast<size_t>(k)]; }
}  // namespace

const char* kind_name(TransformKind k) { return info(k).name; }

std::optional<TransformKind> kind_from_name(std::string_view name) {
    for (const auto& ki : kKinds) {
        if (name == ki.name) return ki.kind;
    }
    return std::nullopt;
}

bool is_user_kind(TransformKind k) { return info(k).user; }
bool is_predictor(TransformKind k) { return info(k).predictor; }
bool is_pipeline_breaker(TransformKind k) { return info(k).breaker; }
bool is_compute_bound(TransformKind k) { return info(k).compute; }
bool kind_has_params(TransformKind k) { return info(k).has_params; }
int kind_arity(TransformKind k) { return info(k).arity; }

std::string DataType::to_string() const {
    switch (kind) {
        case DTypeKind::Text: return "text";
        case DTypeKind::Tokens: return "tokens";
        case DTypeKind::FloatScalar: return "f32";
        case DTypeKind::FloatVector:
            return std::string(density == Density::Dense ? "dense" : "sparse") + "(" +
                   std::to_string(max_length) + ")";
    }
    return "?";
}

const Column* Schema::find(std::string_view name) const {
    for (const auto& c : columns) {
        if (c.name == name) return &c;
    }
    return nullptr;
}

int Schema::index_of(std::string_view name) const {
    for (size_t i = 0; i < columns.size(); ++i) {
        if (columns[i].name == name) return static_cast<int>(i);
    }
    return -1;
}

std::string Schema::to_string() const {
    std::string s = "[";
    for (size_t i = 0; i < columns.size(); ++i) {
        if (i) s += ", ";
        s += columns[i].name + ":" + columns[i].dtype.to_string();
    }
    s += "]";
    return s;
}

}  // namespace pipeserve
