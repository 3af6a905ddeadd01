#include "chaseterm/model.hpp"

#include <algorithm>
#include <charconv>
#include <limits>

namespace chaseterm {

std::string to_string(const Assignment& a) {
    std::string out = "{";
    bool first = true;
    for (const auto& [var, value] : a) {
        if (!first) out += ", ";
        out += var + "->" + to_string(value);
        first = false;
    }
    return out + "}";
}

namespace {

void dedupe(std::vector<Atom>& atoms) {
    std::vector<Atom> out;
    for (auto& a : atoms)
        if (std::find(out.begin(), out.end(), a) == out.end()) out.push_back(std::move(a));
    atoms = std::move(out);
}

void collect_vars(std::span<const Atom> atoms, std::vector<std::string>& out) {
    for (const auto& a : atoms)
        for (const auto& t : a.args)
            if (t.is_variable() && std::find(out.begin(), out.end(), t.name) == out.end()) out.push_back(t.name);
}

bool contains(const std::vector<std::string>& v, const std::string& s) {
    return std::find(v.begin(), v.end(), s) != v.end();
}

} // namespace

std::string default_label(std::size_t id) { return "a" + std::to_string(id + 1); }

Constraint Constraint::tgd(std::size_t id, std::vector<Atom> body, std::vector<Atom> head, std::string label) {
    dedupe(body);
    dedupe(head);
    if (head.empty()) throw Error("TGD with empty head");
    for (const auto& a : body)
        for (const auto& t : a.args)
            if (t.is_null()) throw Error("labeled null in constraint body: " + to_string(a));
    for (const auto& a : head)
        for (const auto& t : a.args)
            if (t.is_null()) throw Error("labeled null in constraint head: " + to_string(a));

    Constraint c;
    c.id = id;
    c.label = label.empty() ? default_label(id) : std::move(label);
    c.kind = ConstraintKind::Tgd;
    c.body = std::move(body);
    c.head = std::move(head);
    collect_vars(c.body, c.universal);
    std::vector<std::string> head_vars;
    collect_vars(c.head, head_vars);
    for (auto& v : head_vars)
        if (!contains(c.universal, v)) c.existential.push_back(v);
    return c;
}

Constraint Constraint::egd(std::size_t id, std::vector<Atom> body, std::string left, std::string right,
                           std::string label) {
    dedupe(body);
    if (body.empty()) throw Error("EGD with empty body");
    for (const auto& a : body)
        for (const auto& t : a.args)
            if (t.is_null()) throw Error("labeled null in constraint body: " + to_string(a));
    Constraint c;
    c.id = id;
    c.label = label.empty() ? default_label(id) : std::move(label);
    c.kind = ConstraintKind::Egd;
    c.body = std::move(body);
    collect_vars(c.body, c.universal);
    if (!contains(c.universal, left)) throw Error("EGD equates variable " + left + " that does not occur in the body");
    if (!contains(c.universal, right)) throw Error("EGD equates variable " + right + " that does not occur in the body");
    c.equated = {std::move(left), std::move(right)};
    return c;
}

std::vector<std::string> Constraint::frontier() const {
    if (is_egd()) {
        if (equated.first == equated.second) return {equated.first};
        return {equated.first, equated.second};
    }
    std::vector<std::string> head_vars;
    collect_vars(head, head_vars);
    std::vector<std::string> out;
    for (const auto& v : universal)
        if (contains(head_vars, v)) out.push_back(v);
    return out;
}

bool Constraint::is_existential(const std::string& var) const { return contains(existential, var); }

std::string to_string(const Constraint& c) {
    std::string out;
    if (c.body.empty()) {
        out = "true";
    } else {
        for (std::size_t i = 0; i < c.body.size(); ++i) {
            if (i) out += ", ";
            out += to_string(c.body[i]);
        }
    }
    out += " -> ";
    if (c.is_egd()) {
        out += c.equated.first + " = " + c.equated.second;
    } else {
        for (std::size_t i = 0; i < c.head.size(); ++i) {
            if (i) out += ", ";
            out += to_string(c.head[i]);
        }
    }
    return out + ".";
}

PositionSet positions_of(const std::string& var, std::span<const Atom> atoms) {
    PositionSet out;
    for (const auto& a : atoms)
        for (std::size_t i = 0; i < a.args.size(); ++i)
            if (a.args[i].is_variable() && a.args[i].name == var) out.insert({a.relation, i + 1});
    return out;
}

PositionSet body_positions(const Constraint& c) {
    PositionSet out;
    for (const auto& a : c.body)
        for (std::size_t i = 0; i < a.args.size(); ++i) out.insert({a.relation, i + 1});
    return out;
}

PositionSet body_positions(std::span<const Constraint> sigma) {
    PositionSet out;
    for (const auto& c : sigma) out.merge(body_positions(c));
    return out;
}

void Schema::check(const Atom& a) {
    auto [it, inserted] = arities_.emplace(a.relation, a.arity());
    if (!inserted && it->second != a.arity())
        throw Error("arity mismatch for " + a.relation + ": expected " + std::to_string(it->second) + ", got " +
                    std::to_string(a.arity()));
}

void Schema::check(const Constraint& c) {
    for (const auto& a : c.body) check(a);
    for (const auto& a : c.head) check(a);
}

std::optional<std::size_t> Schema::arity(const std::string& relation) const {
    auto it = arities_.find(relation);
    if (it == arities_.end()) return std::nullopt;
    return it->second;
}

Instance::Instance(std::initializer_list<Atom> facts) {
    for (const auto& f : facts) insert(f);
}

void Instance::note_null(const Term& t) {
    if (!t.is_null()) return;
    next_null_ = std::max(next_null_, t.creation + 1);
    // Keep generated names `n<k>` clear of nulls already named that way.
    if (t.name.size() > 1 && t.name[0] == 'n') {
        std::uint64_t k = 0;
        auto [ptr, ec] = std::from_chars(t.name.data() + 1, t.name.data() + t.name.size(), k);
        if (ec == std::errc() && ptr == t.name.data() + t.name.size()) next_null_ = std::max(next_null_, k + 1);
    }
}

bool Instance::insert(Atom fact) {
    for (const auto& t : fact.args) {
        if (t.is_variable()) throw Error("variable in instance fact: " + to_string(fact));
        note_null(t);
    }
    return facts_.insert(std::move(fact)).second;
}

bool Instance::erase(const Atom& fact) { return facts_.erase(fact) > 0; }

std::set<Term> Instance::domain() const {
    std::set<Term> out;
    for (const auto& f : facts_)
        for (const auto& t : f.args) out.insert(t);
    return out;
}

std::set<Term> Instance::nulls() const {
    std::set<Term> out;
    for (const auto& f : facts_)
        for (const auto& t : f.args)
            if (t.is_null()) out.insert(t);
    return out;
}

Term Instance::fresh_null() {
    const auto k = next_null_++;
    return Term::null("n" + std::to_string(k), k);
}

void Instance::replace(const Term& from, const Term& to) {
    std::vector<Atom> touched;
    for (auto it = facts_.begin(); it != facts_.end();) {
        if (std::find(it->args.begin(), it->args.end(), from) != it->args.end()) {
            touched.push_back(*it);
            it = facts_.erase(it);
        } else {
            ++it;
        }
    }
    for (auto& f : touched) {
        for (auto& t : f.args)
            if (t == from) t = to;
        facts_.insert(std::move(f));
    }
    note_null(to);
}

std::string to_string(const Instance& inst) {
    std::string out;
    for (const auto& f : inst) out += to_string(f) + ".\n";
    return out;
}

Atom instantiate(const Atom& atom, const Assignment& a) {
    Atom out{atom.relation, {}};
    out.args.reserve(atom.args.size());
    for (const auto& t : atom.args) {
        if (!t.is_variable()) {
            out.args.push_back(t);
            continue;
        }
        auto it = a.find(t.name);
        if (it == a.end()) throw Error("unbound variable " + t.name);
        out.args.push_back(it->second);
    }
    return out;
}

std::set<Atom> instantiate(std::span<const Atom> conjunction, const Assignment& a) {
    std::set<Atom> out;
    for (const auto& atom : conjunction) out.insert(instantiate(atom, a));
    return out;
}

namespace {

class Matcher {
public:
    Matcher(std::span<const Atom> atoms, const Instance& target, const std::function<bool(const Assignment&)>& fn)
        : atoms_(atoms), target_(target), fn_(fn), done_(atoms.size(), false) {}

    bool run(Assignment& a) { return step(a, atoms_.size()); }

private:
    static bool bound(const Term& t, const Assignment& a) { return !t.is_variable() || a.contains(t.name); }

    bool step(Assignment& a, std::size_t remaining) {
        if (remaining == 0) return fn_(a);
        // Most-bound atom first.
        std::size_t pick = atoms_.size();
        std::ptrdiff_t best = std::numeric_limits<std::ptrdiff_t>::min();
        for (std::size_t i = 0; i < atoms_.size(); ++i) {
            if (done_[i]) continue;
            std::ptrdiff_t score = 0;
            for (const auto& t : atoms_[i].args) score += bound(t, a) ? 1 : 0;
            score -= static_cast<std::ptrdiff_t>(atoms_[i].args.size()); // fully bound atoms score 0
            if (score > best) {
                best = score;
                pick = i;
            }
        }
        const Atom& pattern = atoms_[pick];
        done_[pick] = true;
        bool keep_going = true;
        if (best == 0) {
            if (target_.contains(instantiate(pattern, a))) keep_going = step(a, remaining - 1);
        } else {
            std::vector<std::string> bound_here;
            target_.for_each_fact(pattern.relation, [&](const Atom& fact) {
                if (fact.args.size() != pattern.args.size()) return true;
                bool ok = true;
                for (std::size_t k = 0; k < pattern.args.size() && ok; ++k) {
                    const Term& p = pattern.args[k];
                    const Term& v = fact.args[k];
                    if (p.is_variable()) {
                        auto it = a.find(p.name);
                        if (it == a.end()) {
                            a.emplace(p.name, v);
                            bound_here.push_back(p.name);
                        } else if (!(it->second == v)) {
                            ok = false;
                        }
                    } else if (!(p == v)) {
                        ok = false;
                    }
                }
                if (ok) keep_going = step(a, remaining - 1);
                for (const auto& n : bound_here) a.erase(n);
                bound_here.clear();
                return keep_going;
            });
        }
        done_[pick] = false;
        return keep_going;
    }

    std::span<const Atom> atoms_;
    const Instance& target_;
    const std::function<bool(const Assignment&)>& fn_;
    std::vector<bool> done_;
};

} // namespace

bool for_each_match(std::span<const Atom> atoms, const Instance& target, const Assignment& seed,
                    const std::function<bool(const Assignment&)>& fn) {
    Assignment a = seed;
    Matcher m(atoms, target, fn);
    return m.run(a);
}

bool satisfies(const Instance& inst, const Constraint& c, const Assignment& a) {
    for (const auto& atom : c.body)
        if (!inst.contains(instantiate(atom, a))) return true;
    if (c.is_egd()) return a.at(c.equated.first) == a.at(c.equated.second);
    Assignment seed;
    for (const auto& v : c.universal)
        if (auto it = a.find(v); it != a.end()) seed.insert(*it);
    bool found = false;
    for_each_match(c.head, inst, seed, [&](const Assignment&) {
        found = true;
        return false;
    });
    return found;
}

bool satisfies(const Instance& inst, const Constraint& c) { return find_violations(inst, c).empty(); }

std::vector<Assignment> find_violations(const Instance& inst, const Constraint& c) {
    std::vector<Assignment> out;
    for_each_match(c.body, inst, {}, [&](const Assignment& a) {
        if (!satisfies(inst, c, a)) out.push_back(a);
        return true;
    });
    auto key = [&](const Assignment& a) {
        std::vector<Term> t;
        t.reserve(c.universal.size());
        for (const auto& v : c.universal) t.push_back(a.at(v));
        return t;
    };
    std::sort(out.begin(), out.end(), [&](const Assignment& x, const Assignment& y) { return key(x) < key(y); });
    return out;
}

namespace {

// Source nulls become pattern variables; the prefix keeps them apart from
// anything a constraint could name.
std::string null_var(const Term& n) { return "#" + n.name; }

} // namespace

std::optional<TermMapping> find_homomorphism(const Instance& source, const Instance& target) {
    std::vector<Atom> pattern;
    pattern.reserve(source.size());
    for (const auto& f : source) {
        Atom p{f.relation, {}};
        for (const auto& t : f.args) p.args.push_back(t.is_null() ? Term::variable(null_var(t)) : t);
        pattern.push_back(std::move(p));
    }
    std::optional<Assignment> found;
    for_each_match(pattern, target, {}, [&](const Assignment& a) {
        found = a;
        return false;
    });
    if (!found) return std::nullopt;
    TermMapping h;
    for (const auto& t : source.domain()) h.emplace(t, t.is_null() ? found->at(null_var(t)) : t);
    return h;
}

bool is_homomorphism(const TermMapping& h, const Instance& source, const Instance& target) {
    for (const auto& f : source) {
        Atom img{f.relation, {}};
        for (const auto& t : f.args) {
            auto it = h.find(t);
            if (it == h.end()) return false;
            if (t.is_constant() && !(it->second == t)) return false;
            img.args.push_back(it->second);
        }
        if (!target.contains(img)) return false;
    }
    return true;
}

bool hom_equivalent(const Instance& a, const Instance& b) {
    return find_homomorphism(a, b).has_value() && find_homomorphism(b, a).has_value();
}

} // namespace chaseterm
