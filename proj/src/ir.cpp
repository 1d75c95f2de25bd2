#include "pipeserve/ir.hpp"

#include <algorithm>

namespace pipeserve {

const TransformNode& TransformGraph::node(NodeId id) const {
    auto it = nodes.find(id);
    if (it == nodes.end()) throw ValidationError(id, "graph_validation", "unknown node id");
    return it->second;
}

namespace {

ParamType expected_param_type(TransformKind k) {
    switch (k) {
        case TransformKind::CsvSource: return ParamType::CsvConfig;
        case TransformKind::Select: return ParamType::SelectConfig;
        case TransformKind::Tokenize: return ParamType::TokenRules;
        case TransformKind::CharNgram:
        case TransformKind::WordNgram: return ParamType::Dictionary;
        case TransformKind::PcaProject: return ParamType::PcaBasis;
        case TransformKind::KMeansFeaturize: return ParamType::Centroids;
        case TransformKind::TreeEnsemble: return ParamType::Trees;
        case TransformKind::LinearBinaryClassifier:
        case TransformKind::PartialLinear:
        case TransformKind::LinearJoin: return ParamType::LinearWeights;
        default: return ParamType::CsvConfig;  // unreachable for param-less kinds
    }
}

// Conservative pool-capacity bound when training stats are absent.
TrainingStats default_stats(TransformKind kind, const BlobPtr& blob) {
    TrainingStats s;
    s.density = Density::Sparse;
    s.vectorizable = false;
    switch (kind) {
        case TransformKind::CsvSource: {
            const auto& cfg = std::get<CsvConfigParam>(blob->decoded());
            uint32_t m = 0;
            bool dense = false;
            for (const auto& c : cfg.columns) {
                if (c.dtype.is_vector()) {
                    m = std::max(m, c.dtype.max_length);
                    dense = dense || c.dtype.density == Density::Dense;
                }
            }
            s.max_vector_size = m;
            s.density = dense ? Density::Dense : Density::Sparse;
            break;
        }
        case TransformKind::Select:
            s.max_vector_size = 0;  // resolved against the source schema at plan time
            break;
        case TransformKind::Tokenize:
            s.max_vector_size = 4096;  // token-count bound; override via stats for long inputs
            s.density = Density::Dense;
            break;
        case TransformKind::CharNgram:
        case TransformKind::WordNgram:
            s.max_vector_size = std::get<DictionaryParam>(blob->decoded()).size();
            s.density = Density::Sparse;
            break;
        case TransformKind::PcaProject:
            s.max_vector_size = std::get<PcaParam>(blob->decoded()).out_dim;
            s.density = Density::Dense;
            break;
        case TransformKind::KMeansFeaturize:
            s.max_vector_size = std::get<CentroidsParam>(blob->decoded()).k;
            s.density = Density::Dense;
            break;
        case TransformKind::TreeEnsemble:
        case TransformKind::LinearBinaryClassifier:
            s.max_vector_size = 2;
            s.density = Density::Dense;
            break;
        default:
            s.max_vector_size = 0;
            break;
    }
    return s;
}

}  // namespace

TransformGraph append_node(const TransformGraph& g, const ObjectStore& store, TransformKind kind,
                           std::vector<NodeId> inputs, std::optional<Checksum> params,
                           std::optional<TrainingStats> stats, NodeId* out_id) {
    if (!is_user_kind(kind)) {
        throw ValidationError(kNoNode, "builder", std::string("kind not appendable: ") + kind_name(kind));
    }
    int arity = kind_arity(kind);
    if (arity < 0) {
        if (inputs.size() < 2) {
            throw ValidationError(kNoNode, "builder",
                                  std::string(kind_name(kind)) + " requires at least 2 inputs, got " +
                                      std::to_string(inputs.size()));
        }
    } else if (inputs.size() != static_cast<size_t>(arity)) {
        throw ValidationError(kNoNode, "builder",
                              std::string(kind_name(kind)) + " requires " + std::to_string(arity) +
                                  " input(s), got " + std::to_string(inputs.size()));
    }
    for (NodeId in : inputs) {
        if (!g.nodes.contains(in)) {
            throw ValidationError(in, "builder", "unknown parent node id");
        }
    }

    BlobPtr blob;
    if (kind_has_params(kind)) {
        if (!params) {
            throw ValidationError(kNoNode, "builder",
                                  std::string(kind_name(kind)) + " requires parameters");
        }
        blob = store.get(*params);
        if (!blob) {
            throw ValidationError(kNoNode, "builder",
                                  "parameter checksum does not resolve: " + params->hex());
        }
        if (blob->type() != expected_param_type(kind)) {
            throw ValidationError(kNoNode, "builder",
                                  std::string(kind_name(kind)) + " expects " +
                                      param_type_name(expected_param_type(kind)) + " parameters, got " +
                                      param_type_name(blob->type()));
        }
    } else if (params) {
        throw ValidationError(kNoNode, "builder",
                              std::string(kind_name(kind)) + " takes no parameters");
    }

    TransformGraph out = g;
    TransformNode n;
    n.id = out.next_id++;
    n.kind = kind;
    n.params = params;
    n.stats = stats ? *stats : default_stats(kind, blob);
    n.inputs = std::move(inputs);
    out.sink = n.id;
    out.nodes.emplace(n.id, std::move(n));
    if (out_id) *out_id = out.sink;
    return out;
}

std::vector<NodeId> topo_order(const TransformGraph& g) {
    std::map<NodeId, int> pending;
    std::map<NodeId, std::vector<NodeId>> consumers;
    std::vector<NodeId> ready;
    for (const auto& [id, n] : g.nodes) {
        pending[id] = static_cast<int>(n.inputs.size());
        if (n.inputs.empty()) ready.push_back(id);
        for (NodeId in : n.inputs) consumers[in].push_back(id);
    }
    std::vector<NodeId> order;
    order.reserve(g.nodes.size());
    // ready is kept sorted so the order is deterministic
    while (!ready.empty()) {
        std::sort(ready.begin(), ready.end(), std::greater<>());
        NodeId id = ready.back();
        ready.pop_back();
        order.push_back(id);
        for (NodeId c : consumers[id]) {
            if (--pending[c] == 0) ready.push_back(c);
        }
    }
    if (order.size() != g.nodes.size()) {
        throw ValidationError(kNoNode, "graph_validation", "transformation graph contains a cycle");
    }
    return order;
}

std::map<NodeId, std::vector<NodeId>> consumer_map(const TransformGraph& g) {
    std::map<NodeId, std::vector<NodeId>> consumers;
    for (const auto& [id, n] : g.nodes) {
        consumers.emplace(id, std::vector<NodeId>{});
    }
    for (const auto& [id, n] : g.nodes) {
        for (NodeId in : n.inputs) consumers[in].push_back(id);
    }
    return consumers;
}

namespace {

const Column& single_column(const Schema& s, NodeId at, const char* what) {
    if (s.columns.size() != 1) {
        throw ValidationError(at, "schema_validation",
                              std::string(what) + " requires a single-column input, got " +
                                  s.to_string() + "; select a column first");
    }
    return s.columns[0];
}

const Column& vector_column(const Schema& s, NodeId at, const char* what) {
    const Column& c = single_column(s, at, what);
    if (!c.dtype.is_vector()) {
        throw ValidationError(at, "schema_validation",
                              std::string(what) + " requires a float-vector input, got " +
                                  c.dtype.to_string());
    }
    return c;
}

}  // namespace

std::map<NodeId, Schema> propagate_schemas(const TransformGraph& g, const ObjectStore& store) {
    std::map<NodeId, Schema> out;
    for (NodeId id : topo_order(g)) {
        const TransformNode& n = g.node(id);
        auto in_schema = [&](size_t i) -> const Schema& { return out.at(n.inputs[i]); };
        BlobPtr blob = n.params ? store.get(*n.params) : nullptr;
        if (n.params && !blob) {
            throw ValidationError(id, "graph_validation",
                                  "parameter checksum does not resolve: " + n.params->hex());
        }
        Schema s;
        switch (n.kind) {
            case TransformKind::CsvSource: {
                s.columns = std::get<CsvConfigParam>(blob->decoded()).columns;
                break;
            }
            case TransformKind::Select: {
                const auto& cfg = std::get<SelectConfigParam>(blob->decoded());
                const Column* c = in_schema(0).find(cfg.column);
                if (!c) {
                    throw ValidationError(id, "schema_validation",
                                          "selected column not in input schema: " + cfg.column);
                }
                s.columns = {*c};
                break;
            }
            case TransformKind::Tokenize: {
                const Column& c = single_column(in_schema(0), id, "tokenize");
                if (c.dtype.kind != DTypeKind::Text) {
                    throw ValidationError(id, "schema_validation",
                                          "tokenize requires a text input, got " + c.dtype.to_string());
                }
                s.columns = {{c.name, DataType::tokens()}};
                break;
            }
            case TransformKind::CharNgram:
            case TransformKind::WordNgram: {
                const Column& c = single_column(in_schema(0), id, kind_name(n.kind));
                if (c.dtype.kind != DTypeKind::Tokens) {
                    throw ValidationError(id, "schema_validation",
                                          std::string(kind_name(n.kind)) +
                                              " has a token-sequence input schema, got " +
                                              c.dtype.to_string());
                }
                const auto& dict = std::get<DictionaryParam>(blob->decoded());
                NgramMode want =
                    n.kind == TransformKind::CharNgram ? NgramMode::Char : NgramMode::Word;
                if (dict.mode != want) {
                    throw ValidationError(id, "schema_validation",
                                          "dictionary mode does not match the n-gram kind");
                }
                s.columns = {{c.name, DataType::sparse(dict.size())}};
                break;
            }
            case TransformKind::Concat: {
                uint32_t total = 0;
                bool all_dense = true;
                for (size_t i = 0; i < n.inputs.size(); ++i) {
                    const Column& c = vector_column(in_schema(i), id, "concat");
                    total += c.dtype.max_length;
                    all_dense = all_dense && c.dtype.density == Density::Dense;
                }
                s.columns = {{"features", all_dense ? DataType::dense(total) : DataType::sparse(total)}};
                break;
            }
            case TransformKind::NormalizeL2: {
                const Column& c = vector_column(in_schema(0), id, "normalize_l2");
                s.columns = {c};
                break;
            }
            case TransformKind::PcaProject: {
                const Column& c = vector_column(in_schema(0), id, "pca_project");
                const auto& p = std::get<PcaParam>(blob->decoded());
                if (c.dtype.max_length != p.in_dim) {
                    throw ValidationError(id, "schema_validation",
                                          "pca basis expects input length " + std::to_string(p.in_dim) +
                                              ", got " + std::to_string(c.dtype.max_length));
                }
                s.columns = {{c.name, DataType::dense(p.out_dim)}};
                break;
            }
            case TransformKind::KMeansFeaturize: {
                const Column& c = vector_column(in_schema(0), id, "kmeans_featurize");
                const auto& p = std::get<CentroidsParam>(blob->decoded());
                if (c.dtype.max_length != p.dim) {
                    throw ValidationError(id, "schema_validation",
                                          "centroids expect input length " + std::to_string(p.dim) +
                                              ", got " + std::to_string(c.dtype.max_length));
                }
                s.columns = {{c.name, DataType::dense(p.k)}};
                break;
            }
            case TransformKind::TreeEnsemble: {
                const Column& c = vector_column(in_schema(0), id, "tree_ensemble");
                const auto& p = std::get<TreesParam>(blob->decoded());
                for (const auto& tree : p.trees) {
                    for (const auto& tn : tree) {
                        if (tn.feature >= 0 && static_cast<uint32_t>(tn.feature) >= c.dtype.max_length) {
                            throw ValidationError(id, "schema_validation",
                                                  "tree references feature " +
                                                      std::to_string(tn.feature) +
                                                      " beyond input length " +
                                                      std::to_string(c.dtype.max_length));
                        }
                    }
                }
                s.columns = {{"prediction", DataType::scalar()}};
                break;
            }
            case TransformKind::LinearBinaryClassifier: {
                const Column& c = vector_column(in_schema(0), id, "linear_binary");
                const auto& p = std::get<LinearParam>(blob->decoded());
                if (c.dtype.max_length != p.weights.size()) {
                    throw ValidationError(id, "schema_validation",
                                          "weight vector length " + std::to_string(p.weights.size()) +
                                              " does not match input length " +
                                              std::to_string(c.dtype.max_length));
                }
                s.columns = {{"prediction", DataType::scalar()}};
                break;
            }
            case TransformKind::PartialLinear:
            case TransformKind::LinearJoin:
                throw ValidationError(id, "schema_validation",
                                      "optimizer-internal kind in user graph");
        }
        out.emplace(id, std::move(s));
    }
    return out;
}

}  // namespace pipeserve
