#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "pipeserve/ir.hpp"
#include "pipeserve/store.hpp"

namespace pipeserve {

// Sentinel value id for the raw request record consumed by source stages.
inline constexpr NodeId kRecordValue = 0xfffffffeu;

// One transform bound into a stage chain. Inputs reference producer node
// ids (values); execution order is chain order.
struct StageTransform {
    NodeId node = kNoNode;
    TransformKind kind = TransformKind::CsvSource;
    std::optional<Checksum> params;
    TrainingStats stats;
    std::vector<NodeId> inputs;
    // PartialLinear: the weight range this branch covers.
    uint32_t slice_offset = 0;
    uint32_t slice_length = 0;
};

// A fused unit of transforms executed in one pass. Boundaries sit at
// pipeline-breaking transforms and after compute-bound ones.
struct LogicalStage {
    StageId id = 0;
    std::vector<StageTransform> chain;
    std::vector<StageId> deps;             // aggregated producer stages
    std::vector<NodeId> external_inputs;   // consumed values produced elsewhere
    std::vector<NodeId> outputs;           // values exported to other stages / the response
    Schema input_schema;
    Schema output_schema;
    TrainingStats merged_stats;
    std::vector<Checksum> param_refs;
};

struct StageGraph {
    std::map<StageId, LogicalStage> stages;
    StageId sink = 0;
    StageId next_stage_id = 0;

    std::vector<StageId> topo() const;
};

// The value the rewrite steps transform: the flour-style transform graph,
// its schemas, and (once built) the stage graph.
struct PlanGraph {
    TransformGraph transforms;
    std::map<NodeId, Schema> schemas;
    bool has_stages = false;
    StageGraph stages;
    NodeId next_synth_id = 0x80000000u;  // ids for optimizer-introduced nodes
};

enum class RewriteStep : uint8_t {
    InputGraphValidator = 0,
    StageGraphBuilder = 1,
    StageGraphOptimizer = 2,
    OutputGraphValidator = 3,
};

const char* rewrite_step_name(RewriteStep s);

struct RewriteTrace {
    std::map<std::string, uint64_t> rule_applications;
    std::map<std::string, uint64_t> step_passes;
    uint64_t total_applications = 0;
};

// Runs one rewriting step: its rules are iterated in declaration order
// until a full pass leaves the graph unchanged. Steps must run in enum
// order. A hard iteration cap (linear in node count) guards termination.
PlanGraph run_rewrite_step(PlanGraph g, RewriteStep step, const ObjectStore& store,
                           RewriteTrace* trace = nullptr);

// All four steps in order.
PlanGraph run_all_steps(const TransformGraph& g, const ObjectStore& store,
                        RewriteTrace* trace = nullptr);

// Standalone form of the optimizer's concat push-through, exposed for
// algebra tests: rewrites every linear-after-concat pattern in the graph.
PlanGraph push_linear_through_concat(PlanGraph g, const ObjectStore& store);

// ---------------------------------------------------------------------------
// Physical compilation

struct PhysicalStageBinding {
    StageId logical = 0;
    std::string impl_key;
    Checksum layout;             // StageLayoutParam blob in the store
    TrainingStats selected_by;   // statistics snapshot driving the choice
};

// Where a stage's external inputs come from at run time.
struct StageInputBinding {
    bool is_record = false;
    uint32_t vector_index = 0;  // index into the plan's vector demand list
};

// One stage-crossing value (or the sink output): what to acquire from
// the pool and which stage/position produces it.
struct VectorDemand {
    StageId producer_stage = 0;
    uint32_t producer_output = 0;  // index into that stage's output_positions
    uint32_t capacity_floats = 0;
    DTypeKind kind = DTypeKind::FloatVector;
    bool is_sink = false;
};

enum class EngineHint : uint8_t { RequestResponse = 0, Batch = 1 };
enum class OutputMode : uint8_t { Classifier = 0, Regression = 1 };

struct ModelPlan {
    PlanId plan_id = 0;  // assigned at registration
    StageGraph logical;
    std::vector<PhysicalStageBinding> bindings;          // topo order
    std::vector<std::vector<StageInputBinding>> inputs;  // per binding, external wiring
    std::vector<VectorDemand> vectors;
    std::set<Checksum> param_refs;
    uint32_t max_vector_budget = 0;
    EngineHint engine_hint = EngineHint::RequestResponse;
    OutputMode output_mode = OutputMode::Classifier;
    Schema input_schema;
    uint32_t sink_vector = 0;  // index into vectors

    Checksum content_digest() const;  // identity for idempotent registration
};

// Maps each logical stage onto a pre-registered physical implementation
// selected by transform kinds, density, and vectorizability. Stage layouts
// are stored as parameter payloads so identical stages share catalog slots.
std::vector<PhysicalStageBinding> compile_to_physical(PlanGraph& g, ObjectStore& store,
                                                      ModelPlan* plan_out);

// Full pipeline: validate, build stages, optimize, validate, compile.
ModelPlan plan(const TransformGraph& g, ObjectStore& store,
               EngineHint hint = EngineHint::RequestResponse, RewriteTrace* trace = nullptr);

// One line per stage in topological order, for golden-file tests.
std::string dump_stage_graph(const StageGraph& sg);

}  // namespace pipeserve
