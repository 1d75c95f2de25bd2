#pragma once

#include <map>
#include <optional>
#include <vector>

#include "pipeserve/store.hpp"
#include "pipeserve/types.hpp"

namespace pipeserve {

struct TransformNode {
    NodeId id = kNoNode;
    TransformKind kind = TransformKind::CsvSource;
    std::optional<Checksum> params;
    TrainingStats stats;
    std::vector<NodeId> inputs;
};

// User-authored DAG of typed transformations. Values are persistent:
// append copies, never mutates, so captured graphs stay valid.
struct TransformGraph {
    std::map<NodeId, TransformNode> nodes;
    NodeId sink = kNoNode;
    NodeId next_id = 0;

    const TransformNode& node(NodeId id) const;
    bool empty() const { return nodes.empty(); }
};

// Appends one node. Parents must exist, the kind-specific arity must be
// respected, and params must decode to the payload type the kind expects.
// Missing stats get conservative defaults (sparse, dictionary-sized bound).
TransformGraph append_node(const TransformGraph& g, const ObjectStore& store, TransformKind kind,
                           std::vector<NodeId> inputs, std::optional<Checksum> params,
                           std::optional<TrainingStats> stats = std::nullopt,
                           NodeId* out_id = nullptr);

// Output schema per node, derived deterministically from kinds and params.
std::map<NodeId, Schema> propagate_schemas(const TransformGraph& g, const ObjectStore& store);

// Nodes in dependency order; throws ValidationError on cycles.
std::vector<NodeId> topo_order(const TransformGraph& g);
// node -> nodes consuming it (each consumer listed once per input position)
std::map<NodeId, std::vector<NodeId>> consumer_map(const TransformGraph& g);

// Fluent wrapper used by fleets and tests.
class PipelineBuilder {
public:
    explicit PipelineBuilder(ObjectStore& store) : store_(&store) {}
    PipelineBuilder(ObjectStore& store, TransformGraph g) : store_(&store), graph_(std::move(g)) {}

    NodeId add(TransformKind kind, std::vector<NodeId> inputs, std::optional<Checksum> params,
               std::optional<TrainingStats> stats = std::nullopt) {
        NodeId id;
        graph_ = append_node(graph_, *store_, kind, std::move(inputs), std::move(params),
                             std::move(stats), &id);
        return id;
    }

    const TransformGraph& graph() const { return graph_; }
    ObjectStore& store() { return *store_; }

private:
    ObjectStore* store_;
    TransformGraph graph_;
};

}  // namespace pipeserve
