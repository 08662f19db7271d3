#include "support.hpp"

namespace bpmneval::test {

ProcessGraph make_graph(const std::vector<NodeSpec>& nodes, const std::vector<FlowSpec>& flows) {
    ProcessGraph g;
    g.id = "test";
    for (const NodeSpec& n : nodes) g.nodes.push_back({n.id, n.kind, n.label});
    int next = 0;
    for (const FlowSpec& f : flows)
        g.flows.push_back({"f" + std::to_string(next++), f.source, f.target});
    return g;
}

ProcessGraph random_graph(std::mt19937& rng, int max_nodes, const std::string& id_prefix) {
    static const std::vector<std::string> kLabels = {
        "check invoice", "pay invoice",  "ship order",  "receive goods",
        "record claim",  "notify buyer", "update file", "",
    };
    static const std::vector<NodeKind> kKinds = {
        NodeKind::Task,          NodeKind::Task,        NodeKind::Task,
        NodeKind::StartEvent,    NodeKind::EndEvent,    NodeKind::ExclusiveGateway,
        NodeKind::ParallelGateway,
    };

    ProcessGraph g;
    g.id = id_prefix;
    int n = std::uniform_int_distribution<int>(0, max_nodes)(rng);
    for (int i = 0; i < n; ++i) {
        Node node;
        node.id = id_prefix + std::to_string(i);
        node.kind = kKinds[std::uniform_int_distribution<std::size_t>(0, kKinds.size() - 1)(rng)];
        node.label = node.kind == NodeKind::Task
                         ? kLabels[std::uniform_int_distribution<std::size_t>(
                               0, kLabels.size() - 1)(rng)]
                         : "";
        g.nodes.push_back(std::move(node));
    }
    if (n > 0) {
        int edges = std::uniform_int_distribution<int>(0, 2 * n)(rng);
        for (int e = 0; e < edges; ++e) {
            int a = std::uniform_int_distribution<int>(0, n - 1)(rng);
            int b = std::uniform_int_distribution<int>(0, n - 1)(rng);
            g.flows.push_back({"e" + std::to_string(e), g.nodes[a].id, g.nodes[b].id});
        }
    }
    return g;
}

namespace {

struct Builder {
    ProcessGraph graph;
    int next_id = 0;
    int next_flow = 0;

    std::string add(NodeKind kind, const std::string& label) {
        std::string id = "n" + std::to_string(next_id++);
        graph.nodes.push_back({id, kind, label});
        return id;
    }

    void connect(const std::string& from, const std::string& to) {
        graph.flows.push_back({"f" + std::to_string(next_flow++), from, to});
    }
};

struct Block {
    std::string entry;
    std::string exit;
};

Block build_body(Builder& b, std::mt19937& rng, int depth, int& task_budget) {
    int choice = depth <= 0 || task_budget <= 1
                     ? 0
                     : std::uniform_int_distribution<int>(0, 3)(rng);
    if (choice == 0 || task_budget <= 1) {
        --task_budget;
        std::string t = b.add(NodeKind::Task, "task " + std::to_string(b.next_id));
        return {t, t};
    }
    if (choice == 1) {  // sequence
        Block first = build_body(b, rng, depth - 1, task_budget);
        Block second = build_body(b, rng, depth - 1, task_budget);
        b.connect(first.exit, second.entry);
        return {first.entry, second.exit};
    }
    NodeKind kind = choice == 2 ? NodeKind::ExclusiveGateway : NodeKind::ParallelGateway;
    std::string split = b.add(kind, "");
    std::string join = b.add(kind, "");
    Block left = build_body(b, rng, depth - 1, task_budget);
    Block right = build_body(b, rng, depth - 1, task_budget);
    b.connect(split, left.entry);
    b.connect(split, right.entry);
    b.connect(left.exit, join);
    b.connect(right.exit, join);
    return {split, join};
}

enum class Op { Leaf, Seq, Xor, And };

struct Tree {
    Op op = Op::Leaf;
    int left = -1;   // indices into the tree pool
    int right = -1;
};

Block render(Builder& b, const std::vector<Tree>& pool, int index, int& label_counter) {
    const Tree& tree = pool[index];
    switch (tree.op) {
        case Op::Leaf: {
            std::string t =
                b.add(NodeKind::Task, "task " + std::to_string(++label_counter));
            return {t, t};
        }
        case Op::Seq: {
            Block first = render(b, pool, tree.left, label_counter);
            Block second = render(b, pool, tree.right, label_counter);
            b.connect(first.exit, second.entry);
            return {first.entry, second.exit};
        }
        case Op::Xor:
        case Op::And: {
            NodeKind kind =
                tree.op == Op::Xor ? NodeKind::ExclusiveGateway : NodeKind::ParallelGateway;
            std::string split = b.add(kind, "");
            std::string join = b.add(kind, "");
            Block left = render(b, pool, tree.left, label_counter);
            Block right = render(b, pool, tree.right, label_counter);
            b.connect(split, left.entry);
            b.connect(split, right.entry);
            b.connect(left.exit, join);
            b.connect(right.exit, join);
            return {split, join};
        }
    }
    return {};
}

}  // namespace

ProcessGraph random_workflow(std::mt19937& rng, int max_tasks) {
    Builder b;
    b.graph.id = "workflow";
    std::string start = b.add(NodeKind::StartEvent, "");
    int budget = std::uniform_int_distribution<int>(1, std::max(1, max_tasks))(rng);
    Block body = build_body(b, rng, 2, budget);
    std::string end = b.add(NodeKind::EndEvent, "");
    b.connect(start, body.entry);
    b.connect(body.exit, end);
    return std::move(b.graph);
}

std::vector<ProcessGraph> structured_family(int max_depth) {
    std::vector<Tree> pool{{Op::Leaf, -1, -1}};
    std::vector<int> previous{0};
    for (int depth = 1; depth <= max_depth; ++depth) {
        std::vector<int> current = previous;
        for (Op op : {Op::Seq, Op::Xor, Op::And})
            for (int left : previous)
                for (int right : previous) {
                    pool.push_back({op, left, right});
                    current.push_back(static_cast<int>(pool.size()) - 1);
                }
        previous = std::move(current);
    }

    std::vector<ProcessGraph> graphs;
    for (int index : previous) {
        Builder b;
        b.graph.id = "family" + std::to_string(graphs.size());
        std::string start = b.add(NodeKind::StartEvent, "");
        int labels = 0;
        Block body = render(b, pool, index, labels);
        std::string end = b.add(NodeKind::EndEvent, "");
        b.connect(start, body.entry);
        b.connect(body.exit, end);
        graphs.push_back(std::move(b.graph));
    }
    return graphs;
}

}  // namespace bpmneval::test
