#include "pddl.h"

#include "errors.h"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

namespace fondps {

namespace {

// ---------------------------------------------------------------------
// s-expression reader

struct Node {
    bool is_list;
    std::string atom; // lowercased
    std::vector<Node> children;
    int line = -1;
    int column = -1;

    const std::string &head() const {
        static const std::string empty;
        if (!is_list || children.empty() || children.front().is_list)
            return empty;
        return children.front().atom;
    }
};

struct Reader {
    const std::string &text;
    std::size_t pos = 0;
    int line = 1;
    int column = 1;

    explicit Reader(const std::string &t) : text(t) {}

    void advance() {
        if (text[pos] == '\n') {
            ++line;
            column = 1;
        } else {
            ++column;
        }
        ++pos;
    }

    void skip_blank() {
        while (pos < text.size()) {
            if (text[pos] == ';') {
                while (pos < text.size() && text[pos] != '\n')
                    advance();
            } else if (std::isspace(static_cast<unsigned char>(text[pos]))) {
                advance();
            } else {
                break;
            }
        }
    }

    Node read() {
        skip_blank();
        if (pos >= text.size())
            throw ParseError("unexpected end of input", line, column);
        Node node;
        node.line = line;
        node.column = column;
        if (text[pos] == '(') {
            advance();
            node.is_list = true;
            for (;;) {
                skip_blank();
                if (pos >= text.size())
                    throw ParseError("unbalanced '('", node.line, node.column);
                if (text[pos] == ')') {
                    advance();
                    break;
                }
                node.children.push_back(read());
            }
        } else if (text[pos] == ')') {
            throw ParseError("unexpected ')'", line, column);
        } else {
            node.is_list = false;
            while (pos < text.size() && text[pos] != '(' && text[pos] != ')' &&
                   !std::isspace(static_cast<unsigned char>(text[pos]))) {
                node.atom += static_cast<char>(
                    std::tolower(static_cast<unsigned char>(text[pos])));
                advance();
            }
        }
        return node;
    }
};

// ---------------------------------------------------------------------
// lifted structures

struct PredicateDef {
    std::string name;
    std::vector<std::string> param_types;
};

struct Literal {
    bool positive;
    std::string predicate;
    std::vector<std::string> args; // ?variables or constants
};

struct SchemaDef {
    std::string name;
    std::vector<std::pair<std::string, std::string>> params; // (?x, type)
    std::vector<Literal> precondition;                       // positive only
    std::vector<std::vector<Literal>> branches;              // oneof alternatives
};

struct Domain {
    std::string name;
    std::map<std::string, std::string> type_parent;
    std::vector<PredicateDef> predicates;
    std::map<std::string, std::string> constants; // name -> type
    std::vector<SchemaDef> schemas;
};

struct Problem {
    std::string name;
    std::map<std::string, std::string> objects; // name -> type
    std::vector<std::vector<std::string>> init; // ground atoms
    std::vector<std::vector<std::string>> goal;
};

[[noreturn]] void fail(const Node &node, const std::string &msg) {
    throw ParseError(msg, node.line, node.column);
}

// parses "name+ - type" groups; untyped entries default to "object"
void parse_typed_list(const std::vector<Node> &nodes, std::size_t start,
                      const std::function<void(const std::string &,
                                               const std::string &)> &emit) {
    std::vector<std::string> pending;
    for (std::size_t i = start; i < nodes.size(); ++i) {
        const Node &n = nodes[i];
        if (n.is_list)
            fail(n, "expected a name");
        if (n.atom == "-") {
            if (i + 1 >= nodes.size() || nodes[i + 1].is_list)
                fail(n, "expected a type after '-'");
            for (const std::string &name : pending)
                emit(name, nodes[i + 1].atom);
            pending.clear();
            ++i;
        } else {
            pending.push_back(n.atom);
        }
    }
    for (const std::string &name : pending)
        emit(name, "object");
}

Literal parse_literal(const Node &node, bool allow_negative) {
    if (!node.is_list || node.children.empty() || node.children[0].is_list)
        fail(node, "expected an atom");
    Literal lit;
    lit.positive = true;
    const Node *atom = &node;
    if (node.head() == "not") {
        if (!allow_negative)
            fail(node, "negative literals are not supported here");
        if (node.children.size() != 2 || !node.children[1].is_list)
            fail(node, "malformed (not ...)");
        lit.positive = false;
        atom = &node.children[1];
    }
    if (atom->children.empty() || atom->children[0].is_list)
        fail(*atom, "expected a predicate name");
    lit.predicate = atom->children[0].atom;
    for (std::size_t i = 1; i < atom->children.size(); ++i) {
        if (atom->children[i].is_list)
            fail(atom->children[i], "expected an argument name");
        lit.args.push_back(atom->children[i].atom);
    }
    return lit;
}

std::vector<Literal> parse_conjunction(const Node &node, bool allow_negative) {
    std::vector<Literal> literals;
    if (node.is_list && node.head() == "and") {
        for (std::size_t i = 1; i < node.children.size(); ++i)
            literals.push_back(parse_literal(node.children[i], allow_negative));
    } else {
        literals.push_back(parse_literal(node, allow_negative));
    }
    return literals;
}

/*
  effect := literal | (and item*) | (oneof branch+)
  item   := literal | (oneof branch+)        [at most one oneof]
  branch := literal | (and literal*)
  The deterministic literals distribute over every oneof branch.
*/
std::vector<std::vector<Literal>> parse_effect(const Node &node) {
    std::vector<Literal> deterministic;
    const Node *oneof = nullptr;

    if (node.is_list && node.head() == "oneof") {
        oneof = &node;
    } else if (node.is_list && node.head() == "and") {
        for (std::size_t i = 1; i < node.children.size(); ++i) {
            const Node &item = node.children[i];
            if (item.is_list && item.head() == "oneof") {
                if (oneof)
                    throw UnsupportedFeature("several oneof clauses in one effect");
                oneof = &item;
            } else if (item.is_list && (item.head() == "when" ||
                                        item.head() == "forall")) {
                throw UnsupportedFeature(item.head());
            } else {
                deterministic.push_back(parse_literal(item, true));
            }
        }
    } else if (node.is_list && (node.head() == "when" || node.head() == "forall")) {
        throw UnsupportedFeature(node.head());
    } else {
        deterministic.push_back(parse_literal(node, true));
    }

    std::vector<std::vector<Literal>> branches;
    if (!oneof) {
        branches.push_back(std::move(deterministic));
        return branches;
    }
    if (oneof->children.size() < 2)
        fail(*oneof, "oneof needs at least one alternative");
    for (std::size_t i = 1; i < oneof->children.size(); ++i) {
        const Node &alt = oneof->children[i];
        if (alt.is_list && (alt.head() == "oneof"))
            throw UnsupportedFeature("nested oneof");
        std::vector<Literal> branch = deterministic;
        for (Literal &lit : parse_conjunction(alt, true))
            branch.push_back(std::move(lit));
        branches.push_back(std::move(branch));
    }
    return branches;
}

Domain parse_domain(const Node &root) {
    if (!root.is_list || root.head() != "define")
        fail(root, "expected (define (domain ...) ...)");
    Domain domain;
    for (std::size_t i = 1; i < root.children.size(); ++i) {
        const Node &section = root.children[i];
        if (!section.is_list || section.children.empty())
            fail(section, "expected a domain section");
        const std::string &head = section.head();
        if (head == "domain") {
            if (section.children.size() != 2)
                fail(section, "malformed (domain name)");
            domain.name = section.children[1].atom;
        } else if (head == ":requirements") {
            for (std::size_t j = 1; j < section.children.size(); ++j) {
                const std::string &req = section.children[j].atom;
                if (req != ":strips" && req != ":typing" &&
                    req != ":non-deterministic")
                    throw UnsupportedFeature("requirement " + req);
            }
        } else if (head == ":types") {
            parse_typed_list(section.children, 1,
                             [&](const std::string &name, const std::string &parent) {
                                 domain.type_parent[name] = parent;
                             });
        } else if (head == ":constants") {
            parse_typed_list(section.children, 1,
                             [&](const std::string &name, const std::string &type) {
                                 domain.constants[name] = type;
                             });
        } else if (head == ":predicates") {
            for (std::size_t j = 1; j < section.children.size(); ++j) {
                const Node &p = section.children[j];
                if (!p.is_list || p.children.empty() || p.children[0].is_list)
                    fail(p, "malformed predicate declaration");
                PredicateDef def;
                def.name = p.children[0].atom;
                parse_typed_list(p.children, 1,
                                 [&](const std::string &, const std::string &type) {
                                     def.param_types.push_back(type);
                                 });
                domain.predicates.push_back(std::move(def));
            }
        } else if (head == ":action") {
            if (section.children.size() < 2 || section.children[1].is_list)
                fail(section, "malformed :action");
            SchemaDef schema;
            schema.name = section.children[1].atom;
            for (std::size_t j = 2; j + 1 < section.children.size(); j += 2) {
                const std::string &key = section.children[j].atom;
                const Node &value = section.children[j + 1];
                if (key == ":parameters") {
                    if (!value.is_list)
                        fail(value, ":parameters needs a list");
                    parse_typed_list(value.children, 0,
                                     [&](const std::string &name,
                                         const std::string &type) {
                                         schema.params.emplace_back(name, type);
                                     });
                } else if (key == ":precondition") {
                    for (Literal &lit : parse_conjunction(value, false))
                        schema.precondition.push_back(std::move(lit));
                } else if (key == ":effect") {
                    schema.branches = parse_effect(value);
                } else {
                    throw UnsupportedFeature("action field " + key);
                }
            }
            if (schema.branches.empty())
                fail(section, "action without an effect");
            domain.schemas.push_back(std::move(schema));
        } else if (head == ":functions" || head == ":derived" ||
                   head == ":axioms") {
            throw UnsupportedFeature(head);
        } else {
            fail(section, "unknown domain section " + head);
        }
    }
    return domain;
}

Problem parse_problem(const Node &root) {
    if (!root.is_list || root.head() != "define")
        fail(root, "expected (define (problem ...) ...)");
    Problem problem;
    for (std::size_t i = 1; i < root.children.size(); ++i) {
        const Node &section = root.children[i];
        if (!section.is_list || section.children.empty())
            fail(section, "expected a problem section");
        const std::string &head = section.head();
        if (head == "problem") {
            problem.name = section.children.size() > 1 ? section.children[1].atom
                                                       : "problem";
        } else if (head == ":domain") {
            // informational
        } else if (head == ":objects") {
            parse_typed_list(section.children, 1,
                             [&](const std::string &name, const std::string &type) {
                                 problem.objects[name] = type;
                             });
        } else if (head == ":init") {
            for (std::size_t j = 1; j < section.children.size(); ++j) {
                Literal lit = parse_literal(section.children[j], false);
                std::vector<std::string> atom{lit.predicate};
                for (std::string &arg : lit.args)
                    atom.push_back(std::move(arg));
                problem.init.push_back(std::move(atom));
            }
        } else if (head == ":goal") {
            if (section.children.size() != 2)
                fail(section, "malformed :goal");
            for (Literal &lit : parse_conjunction(section.children[1], false)) {
                std::vector<std::string> atom{lit.predicate};
                for (std::string &arg : lit.args)
                    atom.push_back(std::move(arg));
                problem.goal.push_back(std::move(atom));
            }
        } else {
            throw UnsupportedFeature("problem section " + head);
        }
    }
    return problem;
}

// ---------------------------------------------------------------------
// grounding

struct Grounder {
    const Domain &domain;
    const Problem &problem;
    const GroundingOptions &options;

    std::map<std::string, std::string> objects; // constants + problem objects
    std::map<std::string, int> predicate_index;
    std::set<std::string> fluent_predicates;

    std::map<std::string, int> fact_ids;
    std::vector<Fact> facts;
    std::set<std::string> init_atoms;

    Grounder(const Domain &d, const Problem &p, const GroundingOptions &o)
        : domain(d), problem(p), options(o) {}

    bool type_matches(const std::string &object_type,
                      const std::string &wanted) const {
        std::string current = object_type;
        for (;;) {
            if (current == wanted)
                return true;
            if (current == "object")
                return false;
            auto it = domain.type_parent.find(current);
            current = it == domain.type_parent.end() ? "object" : it->second;
        }
    }

    static std::string atom_name(const std::string &predicate,
                                 const std::vector<std::string> &args) {
        if (args.empty())
            return predicate;
        std::string out = predicate + "(";
        for (std::size_t i = 0; i < args.size(); ++i) {
            if (i)
                out += ",";
            out += args[i];
        }
        return out + ")";
    }

    const PredicateDef &predicate(const std::string &name, const Node *where) {
        auto it = predicate_index.find(name);
        if (it == predicate_index.end()) {
            if (where)
                fail(*where, "undeclared predicate " + name);
            throw ParseError("undeclared predicate " + name);
        }
        return domain.predicates[static_cast<std::size_t>(it->second)];
    }

    int fact_id_for(const std::string &predicate_name,
                    const std::vector<std::string> &args) {
        std::string name = atom_name(predicate_name, args);
        auto it = fact_ids.find(name);
        if (it != fact_ids.end())
            return it->second;
        int id = static_cast<int>(facts.size());
        fact_ids.emplace(name, id);
        facts.push_back({id, name, predicate_index.at(predicate_name)});
        return id;
    }

    TaskPtr ground() {
        for (const auto &[name, type] : domain.constants)
            objects[name] = type;
        for (const auto &[name, type] : problem.objects)
            objects[name] = type;
        for (std::size_t i = 0; i < domain.predicates.size(); ++i)
            if (!predicate_index.emplace(domain.predicates[i].name,
                                         static_cast<int>(i)).second)
                throw ParseError("predicate declared twice: " +
                                 domain.predicates[i].name);

        for (const SchemaDef &schema : domain.schemas)
            for (const auto &branch : schema.branches)
                for (const Literal &lit : branch) {
                    if (!predicate_index.count(lit.predicate))
                        throw ParseError("effect uses undeclared predicate " +
                                         lit.predicate);
                    fluent_predicates.insert(lit.predicate);
                }

        for (const auto &atom : problem.init) {
            if (!predicate_index.count(atom[0]))
                throw ParseError("init uses undeclared predicate " + atom[0]);
            init_atoms.insert(atom_name(
                atom[0], std::vector<std::string>(atom.begin() + 1, atom.end())));
        }

        // facts: every typed ground atom of every fluent predicate
        for (std::size_t i = 0; i < domain.predicates.size(); ++i) {
            const PredicateDef &pred = domain.predicates[i];
            if (!fluent_predicates.count(pred.name))
                continue;
            std::vector<std::string> args(pred.param_types.size());
            instantiate_predicate(pred, 0, args);
        }

        std::vector<Action> actions;
        for (std::size_t s = 0; s < domain.schemas.size(); ++s) {
            std::map<std::string, std::string> binding;
            ground_schema(domain.schemas[s], static_cast<int>(s), 0, binding,
                          actions);
        }

        std::vector<int> init_facts;
        for (const auto &[name, id] : fact_ids)
            if (init_atoms.count(name))
                init_facts.push_back(id);

        std::vector<int> goal;
        bool unsolvable_goal = false;
        for (const auto &atom : problem.goal) {
            if (!predicate_index.count(atom[0]))
                throw ParseError("goal uses undeclared predicate " + atom[0]);
            std::vector<std::string> args(atom.begin() + 1, atom.end());
            std::string name = atom_name(atom[0], args);
            if (fluent_predicates.count(atom[0])) {
                goal.push_back(fact_id_for(atom[0], args));
            } else if (!init_atoms.count(name)) {
                unsolvable_goal = true; // static goal atom that never holds
            }
        }
        if (unsolvable_goal) {
            int id = static_cast<int>(facts.size());
            facts.push_back({id, "<unreachable-goal>",
                             static_cast<int>(domain.predicates.size())});
            goal.push_back(id);
        }

        State init(static_cast<std::uint32_t>(facts.size()), init_facts);
        return std::make_shared<FondTask>(std::move(facts), std::move(actions),
                                          std::move(init), std::move(goal));
    }

    void instantiate_predicate(const PredicateDef &pred, std::size_t param,
                               std::vector<std::string> &args) {
        if (param == pred.param_types.size()) {
            fact_id_for(pred.name, args);
            return;
        }
        for (const auto &[name, type] : objects)
            if (type_matches(type, pred.param_types[param])) {
                args[param] = name;
                instantiate_predicate(pred, param + 1, args);
            }
    }

    void ground_schema(const SchemaDef &schema, int schema_index,
                       std::size_t param,
                       std::map<std::string, std::string> &binding,
                       std::vector<Action> &actions) {
        if (param < schema.params.size()) {
            const auto &[var, type] = schema.params[param];
            for (const auto &[name, obj_type] : objects) {
                if (!type_matches(obj_type, type))
                    continue;
                binding[var] = name;
                ground_schema(schema, schema_index, param + 1, binding, actions);
            }
            binding.erase(schema.params[param].first);
            return;
        }

        auto resolve = [&](const std::string &arg) -> std::string {
            if (!arg.empty() && arg[0] == '?') {
                auto it = binding.find(arg);
                if (it == binding.end())
                    throw ParseError("unbound parameter " + arg +
                                     " in action " + schema.name);
                return it->second;
            }
            if (!objects.count(arg))
                throw ParseError("unknown object " + arg + " in action " +
                                 schema.name);
            return arg;
        };

        auto check_arity = [&](const Literal &lit) {
            const PredicateDef &def = predicate(lit.predicate, nullptr);
            if (def.param_types.size() != lit.args.size())
                throw ParseError("wrong arity for predicate " + lit.predicate +
                                 " in action " + schema.name);
        };

        std::vector<int> pre;
        for (const Literal &lit : schema.precondition) {
            check_arity(lit);
            std::vector<std::string> args;
            for (const std::string &arg : lit.args)
                args.push_back(resolve(arg));
            std::string name = atom_name(lit.predicate, args);
            if (fluent_predicates.count(lit.predicate)) {
                pre.push_back(fact_id_for(lit.predicate, args));
            } else if (!init_atoms.count(name)) {
                return; // static precondition fails: drop the binding
            }
        }

        std::vector<Effect> effects;
        for (const auto &branch : schema.branches) {
            Effect effect;
            std::set<int> dels, adds;
            for (const Literal &lit : branch) {
                check_arity(lit);
                std::vector<std::string> args;
                for (const std::string &arg : lit.args)
                    args.push_back(resolve(arg));
                int fact = fact_id_for(lit.predicate, args);
                (lit.positive ? adds : dels).insert(fact);
            }
            // "add wins" for a fact both deleted and added in a branch
            for (int f : adds)
                dels.erase(f);
            effect.del.assign(dels.begin(), dels.end());
            effect.add.assign(adds.begin(), adds.end());
            bool duplicate = false;
            for (const Effect &e : effects)
                if (e.del == effect.del && e.add == effect.add) {
                    duplicate = true;
                    break;
                }
            if (!duplicate)
                effects.push_back(std::move(effect));
        }

        std::sort(pre.begin(), pre.end());
        pre.erase(std::unique(pre.begin(), pre.end()), pre.end());

        Action action;
        action.id = static_cast<int>(actions.size());
        std::string name = schema.name;
        if (!schema.params.empty()) {
            name += "(";
            for (std::size_t i = 0; i < schema.params.size(); ++i) {
                if (i)
                    name += ",";
                name += binding.at(schema.params[i].first);
            }
            name += ")";
        }
        action.name = std::move(name);
        action.pre = std::move(pre);
        action.effects = std::move(effects);
        action.partition_id = schema_index;
        actions.push_back(std::move(action));
        if (actions.size() > options.max_grounded_actions)
            throw GroundingExplosion("grounded action count exceeds the cap of " +
                                     std::to_string(options.max_grounded_actions));
    }
};

} // namespace

TaskPtr parse_pddl(const std::string &domain_text,
                   const std::string &problem_text,
                   const GroundingOptions &options) {
    Reader domain_reader(domain_text);
    Node domain_root = domain_reader.read();
    Reader problem_reader(problem_text);
    Node problem_root = problem_reader.read();
    Domain domain = parse_domain(domain_root);
    Problem problem = parse_problem(problem_root);
    Grounder grounder(domain, problem, options);
    return grounder.ground();
}

TaskPtr parse_pddl_files(const std::string &domain_path,
                         const std::string &problem_path,
                         const GroundingOptions &options) {
    auto slurp = [](const std::string &path) {
        std::ifstream in(path);
        if (!in)
            throw IoError("cannot open " + path);
        std::ostringstream buffer;
        buffer << in.rdbuf();
        return buffer.str();
    };
    return parse_pddl(slurp(domain_path), slurp(problem_path), options);
}

namespace {

std::string sanitize(const std::string &name,
                     std::map<std::string, std::string> &memo,
                     std::set<std::string> &used) {
    auto it = memo.find(name);
    if (it != memo.end())
        return it->second;
    std::string out;
    for (char c : name) {
        if (std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '_')
            out += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
        else
            out += '_';
    }
    if (out.empty() || std::isdigit(static_cast<unsigned char>(out[0])))
        out = "x" + out;
    std::string candidate = out;
    int suffix = 2;
    while (!used.insert(candidate).second)
        candidate = out + "_" + std::to_string(suffix++);
    memo.emplace(name, candidate);
    return candidate;
}

} // namespace

PddlDocument write_task_pddl(const FondTask &task, const std::string &name) {
    std::map<std::string, std::string> memo;
    std::set<std::string> used;
    auto fact_name = [&](int f) {
        return sanitize("f_" + task.facts()[f].name, memo, used);
    };
    auto action_name = [&](int a) {
        return sanitize("a_" + task.actions()[a].name, memo, used);
    };

    std::ostringstream dom;
    dom << "(define (domain " << name << ")\n";
    dom << "  (:requirements :strips :non-deterministic)\n";
    dom << "  (:predicates";
    for (int f = 0; f < task.num_facts(); ++f)
        dom << " (" << fact_name(f) << ")";
    dom << ")\n";
    for (const Action &a : task.actions()) {
        dom << "  (:action " << action_name(a.id) << "\n";
        dom << "    :parameters ()\n";
        dom << "    :precondition (and";
        for (int f : a.pre)
            dom << " (" << fact_name(f) << ")";
        dom << ")\n";
        auto render_branch = [&](const Effect &e) {
            std::string out = "(and";
            for (int f : e.del)
                out += " (not (" + fact_name(f) + "))";
            for (int f : e.add)
                out += " (" + fact_name(f) + ")";
            return out + ")";
        };
        dom << "    :effect ";
        if (a.effects.size() == 1) {
            dom << render_branch(a.effects[0]);
        } else {
            dom << "(oneof";
            for (const Effect &e : a.effects)
                dom << " " << render_branch(e);
            dom << ")";
        }
        dom << ")\n";
    }
    dom << ")\n";

    std::ostringstream prob;
    prob << "(define (problem " << name << "-p)\n";
    prob << "  (:domain " << name << ")\n";
    prob << "  (:init";
    for (int f : task.init().true_facts())
        prob << " (" << fact_name(f) << ")";
    prob << ")\n";
    prob << "  (:goal (and";
    for (int f : task.goal())
        prob << " (" << fact_name(f) << ")";
    prob << ")))\n";

    return {dom.str(), prob.str()};
}

} // namespace fondps
