#include "reconcile/pddl.h"

#include "reconcile/error.h"

#include <json.hpp>

#include <algorithm>
#include <cctype>
#include <fstream>
#include <set>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

namespace reconcile {

namespace {

struct SExpr {
    bool is_list = false;
    std::string atom;  // lower-cased
    std::vector<SExpr> items;
    int line = 0;
    int column = 0;

    bool is_atom(std::string_view text) const { return !is_list && atom == text; }
};

[[noreturn]] void fail(const SExpr &at, const std::string &message) {
    throw SyntaxError(at.line, at.column, message);
}

Error unsupported(const std::string &feature) {
    return Error("UnsupportedFeature", "unsupported PDDL feature: " + feature);
}

class Reader {
public:
    explicit Reader(std::string_view text) : text_(text) {}

    SExpr read_document() {
        skip_space();
        if (pos_ >= text_.size())
            throw SyntaxError(line_, column_, "empty document");
        SExpr root = read();
        skip_space();
        if (pos_ < text_.size())
            throw SyntaxError(line_, column_, "trailing input after top-level expression");
        return root;
    }

private:
    void advance() {
        if (text_[pos_] == '\n') {
            ++line_;
            column_ = 1;
        } else {
            ++column_;
        }
        ++pos_;
    }

    void skip_space() {
        while (pos_ < text_.size()) {
            char c = text_[pos_];
            if (c == ';') {
                while (pos_ < text_.size() && text_[pos_] != '\n')
                    advance();
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                advance();
            } else {
                break;
            }
        }
    }

    SExpr read() {
        skip_space();
        if (pos_ >= text_.size())
            throw SyntaxError(line_, column_, "unexpected end of input");
        SExpr node;
        node.line = line_;
        node.column = column_;
        char c = text_[pos_];
        if (c == ')')
            throw SyntaxError(line_, column_, "unexpected ')'");
        if (c == '(') {
            node.is_list = true;
            advance();
            for (;;) {
                skip_space();
                if (pos_ >= text_.size())
                    throw SyntaxError(node.line, node.column, "unbalanced '('");
                if (text_[pos_] == ')') {
                    advance();
                    break;
                }
                node.items.push_back(read());
            }
            return node;
        }
        while (pos_ < text_.size()) {
            char d = text_[pos_];
            if (d == '(' || d == ')' || d == ';' || std::isspace(static_cast<unsigned char>(d)))
                break;
            node.atom.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(d))));
            advance();
        }
        return node;
    }

    std::string_view text_;
    std::size_t pos_ = 0;
    int line_ = 1;
    int column_ = 1;
};

const SExpr &expect_list(const SExpr &e, const char *what) {
    if (!e.is_list)
        fail(e, std::string("expected ") + what);
    return e;
}

const std::string &expect_atom(const SExpr &e, const char *what) {
    if (e.is_list || e.atom.empty())
        fail(e, std::string("expected ") + what);
    return e.atom;
}

struct TypedName {
    std::string name;
    std::string type;
};

// Parses "a b - t c - u d" style lists. Untyped names get type "object".
std::vector<TypedName> parse_typed_list(const std::vector<SExpr> &items, std::size_t begin) {
    std::vector<TypedName> out;
    std::vector<std::string> pending;
    for (std::size_t i = begin; i < items.size(); ++i) {
        const SExpr &e = items[i];
        if (e.is_atom("-")) {
            if (i + 1 >= items.size())
                fail(e, "missing type after '-'");
            const SExpr &t = items[i + 1];
            if (t.is_list) {
                if (!t.items.empty() && t.items[0].is_atom("either"))
                    throw unsupported("either types");
                fail(t, "expected type name");
            }
            if (pending.empty())
                fail(e, "type without names");
            for (auto &n : pending)
                out.push_back({std::move(n), t.atom});
            pending.clear();
            ++i;
        } else {
            pending.push_back(expect_atom(e, "name"));
        }
    }
    for (auto &n : pending)
        out.push_back({std::move(n), "object"});
    return out;
}

struct AtomSchema {
    std::string predicate;
    std::vector<std::string> args;  // variables start with '?'
    const SExpr *where = nullptr;
};

struct CostTerm {
    bool constant = true;
    Rational value;
    std::string function;
    std::vector<std::string> args;
};

struct ActionSchema {
    std::string name;
    std::vector<TypedName> parameters;
    std::vector<AtomSchema> pre;
    std::vector<AtomSchema> add;
    std::vector<AtomSchema> del;
    std::vector<CostTerm> costs;
};

struct Domain {
    std::string name;
    std::set<std::string> requirements;
    std::map<std::string, std::string> type_parent;
    std::vector<TypedName> constants;
    std::map<std::string, std::size_t> predicate_arity;
    std::vector<ActionSchema> actions;
    bool action_costs = false;
};

struct Problem {
    std::vector<TypedName> objects;
    std::vector<AtomSchema> init;
    std::map<std::string, Rational> function_values;  // ground function name -> value
    std::vector<AtomSchema> goal;
};

const std::set<std::string> kSupportedRequirements = {":strips", ":typing", ":action-costs"};

void parse_requirements(const SExpr &section, std::set<std::string> &into) {
    for (std::size_t i = 1; i < section.items.size(); ++i) {
        const std::string &req = expect_atom(section.items[i], "requirement");
        if (!kSupportedRequirements.count(req))
            throw unsupported(req);
        into.insert(req);
    }
}

AtomSchema parse_atom(const SExpr &e) {
    expect_list(e, "atom");
    if (e.items.empty())
        fail(e, "empty atom");
    const std::string &head = expect_atom(e.items[0], "predicate name");
    if (head == "not")
        throw unsupported("negative-preconditions");
    if (head == "=")
        throw unsupported("equality");
    if (head == "or" || head == "imply" || head == "exists" || head == "forall" ||
        head == "when")
        throw unsupported(head);
    AtomSchema atom{head, {}, &e};
    for (std::size_t i = 1; i < e.items.size(); ++i)
        atom.args.push_back(expect_atom(e.items[i], "argument"));
    return atom;
}

// Conjunction of positive atoms; "()" and "(and)" are the empty conjunction.
void parse_condition(const SExpr &e, std::vector<AtomSchema> &out) {
    expect_list(e, "condition");
    if (e.items.empty())
        return;
    if (e.items[0].is_atom("and")) {
        for (std::size_t i = 1; i < e.items.size(); ++i)
            parse_condition(e.items[i], out);
        return;
    }
    out.push_back(parse_atom(e));
}

void parse_effect(const SExpr &e, ActionSchema &action, bool action_costs) {
    expect_list(e, "effect");
    if (e.items.empty())
        return;
    const SExpr &head = e.items[0];
    if (head.is_atom("and")) {
        for (std::size_t i = 1; i < e.items.size(); ++i)
            parse_effect(e.items[i], action, action_costs);
        return;
    }
    if (head.is_atom("not")) {
        if (e.items.size() != 2)
            fail(e, "malformed negative effect");
        action.del.push_back(parse_atom(e.items[1]));
        return;
    }
    if (head.is_atom("increase")) {
        if (!action_costs)
            throw unsupported("increase without :action-costs");
        if (e.items.size() != 3 || !e.items[1].is_list || e.items[1].items.size() != 1 ||
            !e.items[1].items[0].is_atom("total-cost"))
            fail(e, "only (increase (total-cost) <value>) is supported");
        const SExpr &value = e.items[2];
        CostTerm term;
        if (value.is_list) {
            if (value.items.empty())
                fail(value, "empty cost term");
            term.constant = false;
            term.function = expect_atom(value.items[0], "function name");
            for (std::size_t i = 1; i < value.items.size(); ++i)
                term.args.push_back(expect_atom(value.items[i], "argument"));
        } else {
            try {
                term.value = parse_rational(value.atom);
            } catch (const std::invalid_argument &ex) {
                fail(value, ex.what());
            }
        }
        action.costs.push_back(std::move(term));
        return;
    }
    if (head.is_atom("decrease") || head.is_atom("assign") || head.is_atom("scale-up") ||
        head.is_atom("scale-down"))
        throw unsupported("numeric-fluents");
    action.add.push_back(parse_atom(e));
}

ActionSchema parse_action(const SExpr &section, bool action_costs) {
    if (section.items.size() < 2)
        fail(section, "action without a name");
    ActionSchema action;
    action.name = expect_atom(section.items[1], "action name");
    for (std::size_t i = 2; i < section.items.size(); i += 2) {
        const SExpr &key = section.items[i];
        if (i + 1 >= section.items.size())
            fail(key, "missing value for action field");
        const SExpr &value = section.items[i + 1];
        if (key.is_atom(":parameters")) {
            expect_list(value, "parameter list");
            action.parameters = parse_typed_list(value.items, 0);
        } else if (key.is_atom(":precondition")) {
            parse_condition(value, action.pre);
        } else if (key.is_atom(":effect")) {
            parse_effect(value, action, action_costs);
        } else {
            fail(key, "unknown action field " + key.atom);
        }
    }
    return action;
}

Domain parse_domain(const SExpr &root) {
    expect_list(root, "(define ...)");
    if (root.items.size() < 2 || !root.items[0].is_atom("define"))
        fail(root, "expected (define (domain ...) ...)");
    const SExpr &header = expect_list(root.items[1], "(domain <name>)");
    if (header.items.size() != 2 || !header.items[0].is_atom("domain"))
        fail(header, "expected (domain <name>)");
    Domain d;
    d.name = expect_atom(header.items[1], "domain name");

    for (std::size_t i = 2; i < root.items.size(); ++i) {
        const SExpr &section = expect_list(root.items[i], "domain section");
        if (section.items.empty())
            fail(section, "empty section");
        const std::string &key = expect_atom(section.items[0], "section keyword");
        if (key == ":requirements") {
            parse_requirements(section, d.requirements);
        } else if (key == ":types") {
            for (auto &t : parse_typed_list(section.items, 1))
                d.type_parent[t.name] = t.type;
        } else if (key == ":constants") {
            d.constants = parse_typed_list(section.items, 1);
        } else if (key == ":predicates") {
            for (std::size_t j = 1; j < section.items.size(); ++j) {
                const SExpr &p = expect_list(section.items[j], "predicate declaration");
                if (p.items.empty())
                    fail(p, "empty predicate declaration");
                std::string name = expect_atom(p.items[0], "predicate name");
                d.predicate_arity[name] = parse_typed_list(p.items, 1).size();
            }
        } else if (key == ":functions") {
            // Function signatures only matter for cost lookups; values come
            // from the problem's (= ...) facts.
            continue;
        } else if (key == ":action") {
            d.action_costs = d.requirements.count(":action-costs") > 0;
            d.actions.push_back(parse_action(section, d.action_costs));
        } else if (key == ":derived") {
            throw unsupported("derived-predicates");
        } else if (key == ":durative-action") {
            throw unsupported("durative-actions");
        } else {
            fail(section.items[0], "unknown domain section " + key);
        }
    }
    d.action_costs = d.requirements.count(":action-costs") > 0;
    return d;
}

Problem parse_problem(const SExpr &root, const Domain &domain) {
    expect_list(root, "(define ...)");
    if (root.items.size() < 2 || !root.items[0].is_atom("define"))
        fail(root, "expected (define (problem ...) ...)");
    const SExpr &header = expect_list(root.items[1], "(problem <name>)");
    if (header.items.size() != 2 || !header.items[0].is_atom("problem"))
        fail(header, "expected (problem <name>)");
    Problem p;
    for (std::size_t i = 2; i < root.items.size(); ++i) {
        const SExpr &section = expect_list(root.items[i], "problem section");
        if (section.items.empty())
            fail(section, "empty section");
        const std::string &key = expect_atom(section.items[0], "section keyword");
        if (key == ":domain") {
            if (section.items.size() != 2)
                fail(section, "expected (:domain <name>)");
            if (expect_atom(section.items[1], "domain name") != domain.name)
                fail(section.items[1], "problem refers to domain " + section.items[1].atom +
                                           ", not " + domain.name);
        } else if (key == ":requirements") {
            std::set<std::string> ignored;
            parse_requirements(section, ignored);
        } else if (key == ":objects") {
            p.objects = parse_typed_list(section.items, 1);
        } else if (key == ":init") {
            for (std::size_t j = 1; j < section.items.size(); ++j) {
                const SExpr &fact = expect_list(section.items[j], "initial fact");
                if (!fact.items.empty() && fact.items[0].is_atom("=")) {
                    if (fact.items.size() != 3 || !fact.items[1].is_list ||
                        fact.items[1].items.empty())
                        fail(fact, "expected (= (<function> <args>) <number>)");
                    std::vector<std::string> args;
                    for (std::size_t k = 1; k < fact.items[1].items.size(); ++k)
                        args.push_back(expect_atom(fact.items[1].items[k], "argument"));
                    std::string fname =
                        ground_name(expect_atom(fact.items[1].items[0], "function"), args);
                    try {
                        p.function_values[fname] =
                            parse_rational(expect_atom(fact.items[2], "number"));
                    } catch (const std::invalid_argument &ex) {
                        fail(fact.items[2], ex.what());
                    }
                    continue;
                }
                p.init.push_back(parse_atom(fact));
            }
        } else if (key == ":goal") {
            if (section.items.size() != 2)
                fail(section, "expected (:goal <condition>)");
            parse_condition(section.items[1], p.goal);
        } else if (key == ":metric") {
            if (section.items.size() != 3 || !section.items[1].is_atom("minimize") ||
                !section.items[2].is_list || section.items[2].items.size() != 1 ||
                !section.items[2].items[0].is_atom("total-cost"))
                throw unsupported("metric other than (minimize (total-cost))");
        } else {
            fail(section.items[0], "unknown problem section " + key);
        }
    }
    return p;
}

class Grounder {
public:
    Grounder(const Domain &domain, const Problem &problem, const ParseOptions &options)
        : domain_(domain), problem_(problem), options_(options) {}

    Model run() {
        collect_objects();
        collect_static_predicates();

        for (const AtomSchema &a : problem_.init) {
            check_predicate(a);
            init_atoms_.insert(intern(ground_atom(a, {})));
        }
        for (const AtomSchema &a : problem_.goal) {
            check_predicate(a);
            goal_atoms_.insert(intern(ground_atom(a, {})));
        }
        for (const auto &[pred, arity] : domain_.predicate_arity)
            if (arity == 0)
                intern(ground_name(pred, {}));

        check_explosion();
        for (const ActionSchema &schema : domain_.actions)
            ground_schema(schema);

        return build();
    }

private:
    void collect_objects() {
        auto add = [&](const TypedName &o) {
            if (o.type != "object" && !domain_.type_parent.count(o.type))
                throw Error("SyntaxError", "object " + o.name + " has undeclared type " + o.type);
            objects_.push_back(o);
        };
        for (const auto &o : domain_.constants)
            add(o);
        for (const auto &o : problem_.objects)
            add(o);
        std::set<std::string> seen;
        for (const auto &o : objects_)
            if (!seen.insert(o.name).second)
                throw Error("SyntaxError", "duplicate object " + o.name);
    }

    bool is_subtype(std::string type, const std::string &ancestor) const {
        for (int guard = 0; guard < 1000; ++guard) {
            if (type == ancestor || ancestor == "object")
                return true;
            auto it = domain_.type_parent.find(type);
            if (it == domain_.type_parent.end() || it->second == type)
                return false;
            type = it->second;
        }
        throw Error("SyntaxError", "cyclic type hierarchy");
    }

    std::vector<std::string> objects_of(const std::string &type) const {
        if (type != "object" && !domain_.type_parent.count(type))
            throw Error("SyntaxError", "undeclared type " + type);
        std::vector<std::string> out;
        for (const auto &o : objects_)
            if (is_subtype(o.type, type))
                out.push_back(o.name);
        return out;
    }

    void collect_static_predicates() {
        std::set<std::string> fluent;
        for (const auto &a : domain_.actions) {
            for (const auto &e : a.add)
                fluent.insert(e.predicate);
            for (const auto &e : a.del)
                fluent.insert(e.predicate);
        }
        for (const auto &[pred, arity] : domain_.predicate_arity)
            if (!fluent.count(pred))
                static_predicates_.insert(pred);
    }

    void check_predicate(const AtomSchema &atom) const {
        auto it = domain_.predicate_arity.find(atom.predicate);
        if (it == domain_.predicate_arity.end())
            fail(*atom.where, "undeclared predicate " + atom.predicate);
        if (it->second != atom.args.size())
            fail(*atom.where, "wrong arity for predicate " + atom.predicate);
    }

    std::string ground_atom(const AtomSchema &atom,
                            const std::unordered_map<std::string, std::string> &binding) const {
        std::vector<std::string> args;
        for (const std::string &arg : atom.args) {
            if (!arg.empty() && arg[0] == '?') {
                auto it = binding.find(arg);
                if (it == binding.end())
                    fail(*atom.where, "unbound variable " + arg);
                args.push_back(it->second);
            } else {
                args.push_back(arg);
            }
        }
        // ground_name is not injective ("at a-b c" vs "at a b-c"); two atoms
        // sharing a name would silently merge.
        std::string key = atom.predicate;
        for (const auto &a : args)
            key += " " + a;
        std::string name = ground_name(atom.predicate, args);
        auto [it, inserted] = atom_origin_.emplace(name, key);
        if (!inserted && it->second != key)
            throw Error("NameCollision", "atoms (" + it->second + ") and (" + key +
                                             ") both ground to " + name);
        return name;
    }

    const std::string &intern(std::string name) {
        return *fluents_.insert(std::move(name)).first;
    }

    void check_explosion() const {
        std::size_t total = 0;
        for (const ActionSchema &schema : domain_.actions) {
            std::size_t product = 1;
            for (const auto &p : schema.parameters) {
                std::size_t n = objects_of(p.type).size();
                if (n != 0 && product > options_.grounding_cap / n + 1) {
                    product = options_.grounding_cap + 1;
                    break;
                }
                product *= n;
            }
            total += product;
            if (total > options_.grounding_cap)
                throw Error("GroundingExplosion",
                            "more than " + std::to_string(options_.grounding_cap) +
                                " ground action candidates");
        }
    }

    void ground_schema(const ActionSchema &schema) {
        for (const auto &a : schema.pre)
            check_predicate(a);
        for (const auto &a : schema.add)
            check_predicate(a);
        for (const auto &a : schema.del)
            check_predicate(a);

        std::vector<std::vector<std::string>> domains;
        for (const auto &p : schema.parameters)
            domains.push_back(objects_of(p.type));
        for (const auto &d : domains)
            if (d.empty())
                return;

        std::vector<std::size_t> odometer(domains.size(), 0);
        std::unordered_map<std::string, std::string> binding;
        for (;;) {
            std::vector<std::string> args;
            binding.clear();
            for (std::size_t i = 0; i < domains.size(); ++i) {
                args.push_back(domains[i][odometer[i]]);
                binding[schema.parameters[i].name] = args.back();
            }
            instantiate(schema, args, binding);

            std::size_t k = 0;
            while (k < odometer.size() && ++odometer[k] == domains[k].size())
                odometer[k++] = 0;
            if (k == odometer.size())
                break;
        }
    }

    void instantiate(const ActionSchema &schema, const std::vector<std::string> &args,
                     const std::unordered_map<std::string, std::string> &binding) {
        RawAction ra;
        ra.name = ground_name(schema.name, args);
        for (const auto &a : schema.pre) {
            std::string g = ground_atom(a, binding);
            // only lifted schemas are pruned; a ground action written out in
            // the domain survives so that serialize/parse stays the identity
            if (!schema.parameters.empty() && static_predicates_.count(a.predicate) &&
                !init_atoms_.count(g))
                return;
            ra.pre.insert(g);
        }
        for (const auto &a : schema.add)
            ra.add.insert(ground_atom(a, binding));
        for (const auto &a : schema.del)
            ra.del.insert(ground_atom(a, binding));

        if (domain_.action_costs) {
            ra.cost = 0;
            for (const CostTerm &term : schema.costs) {
                if (term.constant) {
                    ra.cost += term.value;
                    continue;
                }
                std::vector<std::string> fargs;
                for (const auto &arg : term.args) {
                    if (!arg.empty() && arg[0] == '?') {
                        auto it = binding.find(arg);
                        if (it == binding.end())
                            throw Error("SyntaxError", "unbound variable " + arg + " in cost of " +
                                                           schema.name);
                        fargs.push_back(it->second);
                    } else {
                        fargs.push_back(arg);
                    }
                }
                std::string fname = ground_name(term.function, fargs);
                auto it = problem_.function_values.find(fname);
                if (it == problem_.function_values.end())
                    throw Error("SyntaxError", "no value for cost function " + fname);
                ra.cost += it->second;
            }
        } else {
            ra.cost = 1;
        }
        for (const auto &f : ra.pre)
            intern(f);
        for (const auto &f : ra.add)
            intern(f);
        for (const auto &f : ra.del)
            intern(f);
        for (const auto &f : ra.add)
            if (ra.del.count(f))
                throw Error("AddDeleteConflict",
                            "action " + ra.name + " both adds and deletes " + f);
        if (!action_names_.insert(ra.name).second)
            throw Error("NameCollision", "two ground actions named " + ra.name);
        raw_actions_.push_back(std::move(ra));
    }

    Model build() const {
        std::vector<std::string> fluents(fluents_.begin(), fluents_.end());
        std::unordered_map<std::string, int> index;
        for (std::size_t i = 0; i < fluents.size(); ++i)
            index.emplace(fluents[i], static_cast<int>(i));
        auto to_set = [&](const std::set<std::string> &names) {
            FluentSet s(fluents.size());
            for (const auto &n : names)
                s.insert(index.at(n));
            return s;
        };
        std::vector<GroundAction> actions;
        for (const RawAction &ra : raw_actions_)
            actions.push_back({ra.name, ra.cost, to_set(ra.pre), to_set(ra.add), to_set(ra.del)});
        return Model(std::move(fluents), std::move(actions), to_set(init_atoms_),
                     to_set(goal_atoms_), options_.tag);
    }

    struct RawAction {
        std::string name;
        Rational cost;
        std::set<std::string> pre, add, del;
    };

    const Domain &domain_;
    const Problem &problem_;
    const ParseOptions &options_;
    std::vector<TypedName> objects_;
    std::set<std::string> static_predicates_;
    mutable std::unordered_map<std::string, std::string> atom_origin_;
    std::set<std::string> fluents_;
    std::set<std::string> init_atoms_;
    std::set<std::string> goal_atoms_;
    std::set<std::string> action_names_;
    std::vector<RawAction> raw_actions_;
};

std::string upper(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s) {
        if (c == '-')
            out.push_back('_');
        else
            out.push_back(static_cast<char>(std::toupper(static_cast<unsigned char>(c))));
    }
    return out;
}

}  // namespace

std::string ground_name(std::string_view head, const std::vector<std::string> &args) {
    std::string name = upper(head);
    for (const auto &a : args) {
        name.push_back('_');
        name += upper(a);
    }
    return name;
}

Model parse_domain_problem(std::string_view domain_text, std::string_view problem_text,
                           const ParseOptions &options) {
    SExpr droot = Reader(domain_text).read_document();
    Domain domain = parse_domain(droot);
    SExpr proot = Reader(problem_text).read_document();
    Problem problem = parse_problem(proot, domain);
    return Grounder(domain, problem, options).run();
}

SerializedModel serialize_model(const Model &model, std::string_view name) {
    auto atom = [&](int f) { return "(" + model.fluents()[f] + ")"; };
    std::ostringstream d;
    d << "(define (domain " << name << ")\n";
    d << "  (:requirements :strips :action-costs)\n";
    d << "  (:predicates";
    for (std::size_t f = 0; f < model.num_fluents(); ++f)
        d << "\n    " << atom(static_cast<int>(f));
    d << ")\n";
    d << "  (:functions (total-cost) - number)\n";
    for (const GroundAction &a : model.actions()) {
        d << "  (:action " << a.name << "\n";
        d << "    :parameters ()\n";
        d << "    :precondition (and";
        for (int f : a.pre.members())
            d << " " << atom(f);
        d << ")\n";
        d << "    :effect (and";
        for (int f : a.add.members())
            d << " " << atom(f);
        for (int f : a.del.members())
            d << " (not " << atom(f) << ")";
        d << " (increase (total-cost) " << format_rational(a.cost) << ")))\n";
    }
    d << ")\n";

    std::ostringstream p;
    p << "(define (problem " << name << "-problem)\n";
    p << "  (:domain " << name << ")\n";
    p << "  (:init";
    for (int f : model.init().members())
        p << "\n    " << atom(f);
    p << ")\n";
    p << "  (:goal (and";
    for (int f : model.goal().members())
        p << "\n    " << atom(f);
    p << "))\n";
    p << "  (:metric minimize (total-cost)))\n";
    return {d.str(), p.str()};
}

std::string read_file(const std::filesystem::path &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw Error("FileNotFound", "cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

ModelPair align_models(const Model &robot, const Model &human) {
    if (robot.names_of(robot.init()) != human.names_of(human.init()))
        throw Error("InitGoalMismatch", "human initial state differs from robot initial state");
    if (robot.names_of(robot.goal()) != human.names_of(human.goal()))
        throw Error("InitGoalMismatch", "human goal differs from robot goal");
    if (robot.actions().size() != human.actions().size())
        throw Error("VocabularyMismatch", "robot and human models ground different action sets");
    for (std::size_t i = 0; i < robot.actions().size(); ++i)
        if (robot.actions()[i].name != human.actions()[i].name)
            throw Error("VocabularyMismatch",
                        "action " + robot.actions()[i].name + " / " + human.actions()[i].name +
                            " not shared by both models");

    std::set<std::string> names(robot.fluents().begin(), robot.fluents().end());
    names.insert(human.fluents().begin(), human.fluents().end());
    std::vector<std::string> vocabulary(names.begin(), names.end());
    ModelPair pair;
    pair.robot = reindex(robot, vocabulary).with_tag(ModelTag::Robot);
    pair.human = reindex(human, vocabulary).with_tag(ModelTag::Human);
    return pair;
}

ModelPair load_manifest(const std::filesystem::path &path, const ParseOptions &options) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(read_file(path));
    } catch (const nlohmann::json::exception &ex) {
        throw Error("ManifestError", "malformed manifest " + path.string() + ": " + ex.what());
    }
    auto dir = path.parent_path();
    auto field = [&](const char *key) {
        if (!j.is_object() || !j.contains(key) || !j[key].is_string())
            throw Error("ManifestError", std::string("manifest lacks string field ") + key);
        std::filesystem::path p = j[key].get<std::string>();
        return p.is_absolute() ? p : dir / p;
    };
    Manifest m;
    m.robot_domain = field("robot_domain");
    m.robot_problem = field("robot_problem");
    m.human_domain = field("human_domain");
    m.human_problem = field("human_problem");
    if (j.contains("metadata")) {
        if (!j["metadata"].is_object())
            throw Error("ManifestError", "metadata must be an object");
        for (auto &[k, v] : j["metadata"].items())
            m.metadata[k] = v.is_string() ? v.get<std::string>() : v.dump();
    }

    ParseOptions ro = options;
    ro.tag = ModelTag::Robot;
    ParseOptions ho = options;
    ho.tag = ModelTag::Human;
    Model robot = parse_domain_problem(read_file(m.robot_domain), read_file(m.robot_problem), ro);
    Model human = parse_domain_problem(read_file(m.human_domain), read_file(m.human_problem), ho);
    ModelPair pair = align_models(robot, human);
    pair.manifest = std::move(m);
    return pair;
}

std::string format_plan(const Plan &plan) {
    std::string out;
    for (const auto &s : plan.steps)
        out += s + "\n";
    out += "; cost = " + (plan.cost ? format_rational(*plan.cost) : std::string("infinity")) + "\n";
    return out;
}

std::vector<std::string> parse_action_list(std::string_view text) {
    std::vector<std::string> out;
    std::istringstream in{std::string(text)};
    std::string line;
    while (std::getline(in, line)) {
        if (auto c = line.find_first_of("#;"); c != std::string::npos)
            line.erase(c);
        std::istringstream words(line);
        std::vector<std::string> parts;
        std::string w;
        while (words >> w) {
            std::erase(w, '(');
            std::erase(w, ')');
            if (!w.empty())
                parts.push_back(w);
        }
        if (parts.empty())
            continue;
        std::string head = parts.front();
        parts.erase(parts.begin());
        out.push_back(ground_name(head, parts));
    }
    return out;
}

}  // namespace reconcile
