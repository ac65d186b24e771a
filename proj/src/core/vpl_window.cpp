#include "core/vpl_window.hpp"

namespace slwin {

VplWindow::VplWindow(Vpa vpa) : vpa_(std::move(vpa)) {
    init();
    TopOps ops{&letters_, vpa_.state_count, &cc_};
    desc_ = std::make_unique<TopDeque>(ops);
    asc_ = std::make_unique<TopDeque>(ops);
}

VplWindow::VplWindow(Vpa vpa, std::size_t fixed_capacity) : vpa_(std::move(vpa)) {
    init();
    TopOps ops{&letters_, vpa_.state_count, &cc_};
    // each symbol contributes at most two top-level entries
    desc_ = std::make_unique<TopDeque>(ops, 2 * fixed_capacity + 4);
    asc_ = std::make_unique<TopDeque>(ops, 2 * fixed_capacity + 4);
}

VplWindow::~VplWindow() = default;

void VplWindow::init() {
    vpa_.validate();
    for (std::uint32_t a = 0; a < vpa_.alphabet.size(); ++a)
        letters_.push_back(phi_letter(vpa_, a));
    eps_.kind = VplNode::Kind::Eps;
    eps_.phi = identity_transform(vpa_.state_count);
    sep_ = &eps_;
    scratch_a_.resize(vpa_.state_count);
    scratch_b_.resize(vpa_.state_count);
}

VplNode* VplWindow::alloc_node() {
    VplNode* n;
    if (!free_list_.empty()) {
        n = free_list_.back();
        free_list_.pop_back();
    } else {
        arena_.push_back(std::make_unique<VplNode>());
        n = arena_.back().get();
    }
    n->child = nullptr;
    n->kids.reset();
    ++live_;
    ++cc_.node_constructions;
    return n;
}

void VplWindow::release_node(VplNode* n) {
    if (is_eps(n)) return; // the shared empty tree is never reclaimed
    deferred_.push_back(n);
}

void VplWindow::drain_released() {
    for (int k = 0; k < 2 && !deferred_.empty(); ++k) {
        VplNode* n = deferred_.back();
        deferred_.pop_back();
        n->kids.reset();
        n->child = nullptr;
        free_list_.push_back(n);
        --live_;
    }
}

VplNode* VplWindow::make_leaf(std::uint32_t sym) {
    VplNode* n = alloc_node();
    n->kind = VplNode::Kind::Leaf;
    n->sym_a = sym;
    n->phi = letters_[sym];
    return n;
}

VplNode* VplWindow::construct_prime(std::uint32_t call_sym, VplNode* body,
                                    std::uint32_t ret_sym) {
    if (vpa_.sym_class[call_sym] != SymClass::Call ||
        vpa_.sym_class[ret_sym] != SymClass::Return)
        throw InputError("construct_prime: bracket letters of the wrong class");
    VplNode* n = alloc_node();
    n->kind = VplNode::Kind::Prime;
    n->sym_a = call_sym;
    n->sym_b = ret_sym;
    n->child = body;
    n->phi = StateTransform(vpa_.state_count);
    for (std::uint32_t p = 0; p < vpa_.state_count; ++p) {
        std::uint32_t gamma = vpa_.call_push[vpa_.call_idx(p, call_sym)];
        std::uint32_t q = vpa_.call_state[vpa_.call_idx(p, call_sym)];
        std::uint32_t q2 = body->phi.apply(q);
        n->phi[p] = vpa_.ret_state[vpa_.ret_idx(q2, ret_sym, gamma)];
    }
    ++cc_.monoid_compositions; // one product's worth of table work
    return n;
}

void VplWindow::refresh_phi(VplNode* comp) {
    comp->kids->product_into(comp->phi.map());
}

VplNode* VplWindow::concat_right(VplNode* u, VplNode* v) {
    if (v->kind != VplNode::Kind::Leaf && v->kind != VplNode::Kind::Prime)
        throw InputError("concatenate: right operand must be a prime");
    if (is_eps(u)) return v;
    if (u->kind == VplNode::Kind::Comp) {
        u->kids->push_right(v);
        refresh_phi(u);
        return u;
    }
    VplNode* r = alloc_node();
    r->kind = VplNode::Kind::Comp;
    r->kids = std::make_unique<VplNode::ChildDeque>(
        VplNode::ChildOps{vpa_.state_count, &cc_});
    r->kids->push_right(u);
    r->kids->push_right(v);
    r->phi = StateTransform(vpa_.state_count);
    refresh_phi(r);
    return r;
}

VplNode* VplWindow::concat_left(VplNode* v, VplNode* u) {
    if (v->kind != VplNode::Kind::Leaf && v->kind != VplNode::Kind::Prime)
        throw InputError("concatenate: left operand must be a prime");
    if (is_eps(u)) return v;
    if (u->kind == VplNode::Kind::Comp) {
        u->kids->push_left(v);
        refresh_phi(u);
        return u;
    }
    VplNode* r = alloc_node();
    r->kind = VplNode::Kind::Comp;
    r->kids = std::make_unique<VplNode::ChildDeque>(
        VplNode::ChildOps{vpa_.state_count, &cc_});
    r->kids->push_right(v);
    r->kids->push_right(u);
    r->phi = StateTransform(vpa_.state_count);
    refresh_phi(r);
    return r;
}

VplWindow::PrimePop VplWindow::left_prime_pop(VplNode* w) {
    if (is_eps(w)) throw StateError("left_prime_pop: empty tree");
    if (w->kind != VplNode::Kind::Comp) return {w, &eps_};
    VplNode* first = w->kids->pop_left();
    if (w->kids->size() == 1) {
        VplNode* only = w->kids->pop_left();
        release_node(w);
        return {first, only};
    }
    refresh_phi(w);
    return {first, w};
}

VplWindow::PrimePop VplWindow::right_prime_pop(VplNode* w) {
    if (is_eps(w)) throw StateError("right_prime_pop: empty tree");
    if (w->kind != VplNode::Kind::Comp) return {w, &eps_};
    VplNode* last = w->kids->pop_right();
    if (w->kids->size() == 1) {
        VplNode* only = w->kids->pop_left();
        release_node(w);
        return {last, only};
    }
    refresh_phi(w);
    return {last, w};
}

VplWindow::SymbolPop VplWindow::left_symbol_pop(VplNode* w) {
    PrimePop pp = left_prime_pop(w);
    SymbolPop out;
    out.rest = pp.rest;
    if (pp.first->kind == VplNode::Kind::Leaf) {
        release_node(pp.first);
        return out;
    }
    out.exposed = true;
    out.letter = static_cast<std::int32_t>(pp.first->sym_b);
    out.inner = pp.first->child;
    release_node(pp.first);
    return out;
}

VplWindow::SymbolPop VplWindow::right_symbol_pop(VplNode* w) {
    PrimePop pp = right_prime_pop(w);
    SymbolPop out;
    out.rest = pp.rest;
    if (pp.first->kind == VplNode::Kind::Leaf) {
        release_node(pp.first);
        return out;
    }
    out.exposed = true;
    out.letter = static_cast<std::int32_t>(pp.first->sym_a);
    out.inner = pp.first->child;
    release_node(pp.first);
    return out;
}

void VplWindow::push_right_sym(std::uint32_t b) {
    switch (vpa_.sym_class[b]) {
    case SymClass::Call:
        asc_->push_right({nullptr, static_cast<std::int32_t>(b)});
        asc_->push_right({&eps_, -1});
        break;
    case SymClass::Internal:
        if (asc_->empty()) {
            sep_ = concat_right(sep_, make_leaf(b));
        } else {
            TopEntry t = asc_->pop_right();
            asc_->push_right({concat_right(t.node, make_leaf(b)), -1});
        }
        break;
    case SymClass::Return:
        if (asc_->empty()) {
            desc_->push_right({sep_, -1});
            desc_->push_right({nullptr, static_cast<std::int32_t>(b)});
            sep_ = &eps_;
        } else if (asc_->size() == 2) {
            TopEntry t = asc_->pop_right();
            TopEntry m = asc_->pop_right();
            VplNode* prime = construct_prime(static_cast<std::uint32_t>(m.marker), t.node, b);
            sep_ = concat_right(sep_, prime);
        } else {
            TopEntry t = asc_->pop_right();
            TopEntry m = asc_->pop_right();
            TopEntry w = asc_->pop_right();
            VplNode* prime = construct_prime(static_cast<std::uint32_t>(m.marker), t.node, b);
            asc_->push_right({concat_right(w.node, prime), -1});
        }
        break;
    }
    ++len_;
}

void VplWindow::push_left_sym(std::uint32_t b) {
    switch (vpa_.sym_class[b]) {
    case SymClass::Return:
        desc_->push_left({nullptr, static_cast<std::int32_t>(b)});
        desc_->push_left({&eps_, -1});
        break;
    case SymClass::Internal:
        if (desc_->empty()) {
            sep_ = concat_left(make_leaf(b), sep_);
        } else {
            TopEntry t = desc_->pop_left();
            desc_->push_left({concat_left(make_leaf(b), t.node), -1});
        }
        break;
    case SymClass::Call:
        if (desc_->empty()) {
            asc_->push_left({sep_, -1});
            asc_->push_left({nullptr, static_cast<std::int32_t>(b)});
            sep_ = &eps_;
        } else if (desc_->size() == 2) {
            TopEntry t = desc_->pop_left();
            TopEntry m = desc_->pop_left();
            VplNode* prime = construct_prime(b, t.node, static_cast<std::uint32_t>(m.marker));
            sep_ = concat_left(prime, sep_);
        } else {
            TopEntry t = desc_->pop_left();
            TopEntry m = desc_->pop_left();
            TopEntry w = desc_->pop_left();
            VplNode* prime = construct_prime(b, t.node, static_cast<std::uint32_t>(m.marker));
            desc_->push_left({concat_left(prime, w.node), -1});
        }
        break;
    }
    ++len_;
}

void VplWindow::pop_left_sym() {
    if (desc_->empty()) {
        if (!is_eps(sep_)) {
            SymbolPop sp = left_symbol_pop(sep_);
            if (sp.exposed) {
                desc_->push_right({sp.inner, -1});
                desc_->push_right({nullptr, sp.letter});
            }
            sep_ = sp.rest;
        } else {
            // window starts with the first pending call
            asc_->pop_left(); // the marker
            TopEntry t = asc_->pop_left();
            sep_ = t.node;
        }
    } else if (is_eps(desc_->front().node) && desc_->front().marker < 0) {
        desc_->pop_left();
        desc_->pop_left(); // its marker
    } else {
        TopEntry t = desc_->pop_left();
        SymbolPop sp = left_symbol_pop(t.node);
        if (sp.exposed) {
            desc_->push_left({sp.rest, -1});
            desc_->push_left({nullptr, sp.letter});
            desc_->push_left({sp.inner, -1});
        } else {
            desc_->push_left({sp.rest, -1});
        }
    }
    --len_;
}

void VplWindow::pop_right_sym() {
    if (asc_->empty()) {
        if (!is_eps(sep_)) {
            SymbolPop sp = right_symbol_pop(sep_);
            if (sp.exposed) {
                asc_->push_left({sp.inner, -1});
                asc_->push_left({nullptr, sp.letter});
            }
            sep_ = sp.rest;
        } else {
            // window ends with the last pending return
            desc_->pop_right(); // the marker
            TopEntry t = desc_->pop_right();
            sep_ = t.node;
        }
    } else if (is_eps(asc_->back().node) && asc_->back().marker < 0) {
        asc_->pop_right();
        asc_->pop_right();
    } else {
        TopEntry t = asc_->pop_right();
        SymbolPop sp = right_symbol_pop(t.node);
        if (sp.exposed) {
            asc_->push_right({sp.rest, -1});
            asc_->push_right({nullptr, sp.letter});
            asc_->push_right({sp.inner, -1});
        } else {
            asc_->push_right({sp.rest, -1});
        }
    }
    --len_;
}

void VplWindow::do_apply(WinOp op, std::uint32_t symbol) {
    drain_released();
    switch (op) {
    case WinOp::RightPush:
    case WinOp::LeftPush:
        if (symbol >= vpa_.alphabet.size())
            throw InputError("vpl window: unknown symbol code");
        if (op == WinOp::RightPush)
            push_right_sym(symbol);
        else
            push_left_sym(symbol);
        break;
    case WinOp::LeftPop:
        if (len_ == 0) throw StateError("vpl window: pop on empty");
        pop_left_sym();
        break;
    case WinOp::RightPop:
        if (len_ == 0) throw StateError("vpl window: pop on empty");
        pop_right_sym();
        break;
    }
}

bool VplWindow::do_query() {
    desc_->product_into(scratch_a_);
    compose_spans(scratch_b_, scratch_a_, sep_->phi.map(), &cc_);
    asc_->product_into(scratch_a_);
    std::uint32_t q = scratch_a_[scratch_b_[vpa_.initial]];
    ++cc_.monoid_compositions;
    return vpa_.finals[q] != 0;
}

void VplWindow::spell_tree(const VplNode* n, std::vector<std::uint32_t>& out) const {
    switch (n->kind) {
    case VplNode::Kind::Eps: break;
    case VplNode::Kind::Leaf: out.push_back(n->sym_a); break;
    case VplNode::Kind::Prime:
        out.push_back(n->sym_a);
        spell_tree(n->child, out);
        out.push_back(n->sym_b);
        break;
    case VplNode::Kind::Comp:
        for (std::size_t i = 0; i < n->kids->size(); ++i) spell_tree(n->kids->at(i), out);
        break;
    }
}

std::vector<std::uint32_t> VplWindow::spell_codes() const {
    std::vector<std::uint32_t> out;
    for (std::size_t i = 0; i < desc_->size(); ++i) {
        const TopEntry& e = desc_->at(i);
        if (e.marker >= 0)
            out.push_back(static_cast<std::uint32_t>(e.marker));
        else
            spell_tree(e.node, out);
    }
    spell_tree(sep_, out);
    for (std::size_t i = 0; i < asc_->size(); ++i) {
        const TopEntry& e = asc_->at(i);
        if (e.marker >= 0)
            out.push_back(static_cast<std::uint32_t>(e.marker));
        else
            spell_tree(e.node, out);
    }
    return out;
}

std::string VplWindow::spell() const {
    std::string s;
    for (std::uint32_t c : spell_codes()) s += vpa_.alphabet[c];
    return s;
}

bool VplWindow::structure_ok() const {
    if (desc_->size() % 2 != 0 || asc_->size() % 2 != 0) return false;
    for (std::size_t i = 0; i < desc_->size(); ++i) {
        const TopEntry& e = desc_->at(i);
        bool is_marker = e.marker >= 0;
        if (is_marker != (i % 2 == 1)) return false; // tree, marker, tree, marker...
        if (is_marker && vpa_.sym_class[e.marker] != SymClass::Return) return false;
    }
    for (std::size_t i = 0; i < asc_->size(); ++i) {
        const TopEntry& e = asc_->at(i);
        bool is_marker = e.marker >= 0;
        if (is_marker != (i % 2 == 0)) return false; // marker, tree, marker, tree...
        if (is_marker && vpa_.sym_class[e.marker] != SymClass::Call) return false;
    }
    return true;
}

bool VplWindow::check_phi(const VplNode* n) const {
    switch (n->kind) {
    case VplNode::Kind::Eps:
        return n->phi == identity_transform(vpa_.state_count);
    case VplNode::Kind::Leaf:
        return n->phi == letters_[n->sym_a];
    case VplNode::Kind::Prime: {
        if (!check_phi(n->child)) return false;
        for (std::uint32_t p = 0; p < vpa_.state_count; ++p) {
            std::uint32_t gamma = vpa_.call_push[vpa_.call_idx(p, n->sym_a)];
            std::uint32_t q = vpa_.call_state[vpa_.call_idx(p, n->sym_a)];
            std::uint32_t q2 = n->child->phi.apply(q);
            if (n->phi[p] != vpa_.ret_state[vpa_.ret_idx(q2, n->sym_b, gamma)]) return false;
        }
        return true;
    }
    case VplNode::Kind::Comp: {
        if (n->kids->size() < 2) return false;
        StateTransform acc = identity_transform(vpa_.state_count);
        for (std::size_t i = 0; i < n->kids->size(); ++i) {
            const VplNode* k = n->kids->at(i);
            if (k->kind == VplNode::Kind::Eps || k->kind == VplNode::Kind::Comp) return false;
            if (!check_phi(k)) return false;
            acc = compose(acc, k->phi);
        }
        return acc == n->phi;
    }
    }
    return false;
}

bool VplWindow::phi_labels_ok() const {
    for (std::size_t i = 0; i < desc_->size(); ++i)
        if (desc_->at(i).marker < 0 && !check_phi(desc_->at(i).node)) return false;
    if (!check_phi(sep_)) return false;
    for (std::size_t i = 0; i < asc_->size(); ++i)
        if (asc_->at(i).marker < 0 && !check_phi(asc_->at(i).node)) return false;
    return true;
}

} // namespace slwin
