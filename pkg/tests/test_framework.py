import pytest
from hypothesis import given, strategies as st

import hafs
from hafs import (ElementId, HAFS, InfeasibleParametersError, ParseError,
                  Relation, SupportChain, ValidationError, argument, attack_id,
                  generate_random, is_support_acyclic, parse, serialize, support_id)

from helpers import corpus, kahn_is_acyclic


class TestElementId:
    def test_qualified_round_trip(self):
        for eid in (argument("a"), attack_id("r1"), support_id("t1")):
            assert ElementId.from_qualified(eid.qualified) == eid

    def test_ordering_arguments_before_attacks_before_supports(self):
        ids = [support_id("a"), attack_id("z"), argument("m"), attack_id("a")]
        assert [x.qualified for x in sorted(ids)] == ["arg:m", "att:a", "att:z", "supp:a"]

    def test_bad_name_rejected(self):
        with pytest.raises(ValidationError):
            argument("1abc")
        with pytest.raises(ValidationError):
            ElementId.from_qualified("nope:a")

    def test_equality_is_kind_and_name(self):
        assert argument("a") != attack_id("a")
        assert argument("a") == argument("a")


class TestParse:
    def test_minimal_framework(self):
        h = parse("arg(a).")
        assert [x.qualified for x in h.universe] == ["arg:a"]
        assert h.attacks == () and h.supports == ()

    def test_self_support_framework(self, example3):
        assert [x.qualified for x in example3.universe] == ["arg:a", "supp:t1"]
        (t1,) = example3.supports
        assert t1.source == argument("a") and t1.target == argument("a")

    def test_self_referential_relation_rejected(self):
        with pytest.raises(ValidationError, match="references itself"):
            parse("arg(a). att(r1,r1,a).")

    def test_comments_and_whitespace(self):
        h = parse("% header\narg( a ).  % trailing\n\natt(r1 , a, a).")
        assert len(h) == 2

    def test_forward_references_resolve(self):
        h = parse("att(r1,a,t1). supp(t1,a,a). arg(a).")
        assert len(h.attacks) == 1
        assert h.attacks[0].target == support_id("t1")

    def test_syntax_error_position(self):
        with pytest.raises(ParseError) as err:
            parse("arg(a).\natt(r1,a).")
        assert err.value.line == 2

    def test_unexpected_character(self):
        with pytest.raises(ParseError):
            parse("arg(a); ")

    def test_duplicate_name(self):
        with pytest.raises(ValidationError, match="duplicate name"):
            parse("arg(a). att(a,a,a).")

    def test_duplicate_pair_same_kind(self):
        with pytest.raises(ValidationError, match="duplicate att"):
            parse("arg(a). arg(b). att(r1,a,b). att(r2,a,b).")

    def test_same_pair_different_kind_allowed(self):
        h = parse("arg(a). arg(b). att(r1,a,b). supp(t1,a,b).")
        assert len(h.attacks) == 1 and len(h.supports) == 1

    def test_dangling_reference(self):
        with pytest.raises(ValidationError, match="dangling"):
            parse("arg(a). att(r1,a,zz).")

    def test_definitional_cycle(self):
        with pytest.raises(ValidationError, match="definitional cycle"):
            parse("arg(a). att(r1,r2,a). att(r2,r1,a).")

    def test_truncated_input(self):
        with pytest.raises(ParseError):
            parse("arg(a")


class TestSerialize:
    def test_canonical_order(self):
        h = parse("supp(t1,a,a). arg(b). arg(a). att(r1,b,a).")
        assert serialize(h) == "arg(a).\narg(b).\natt(r1,b,a).\nsupp(t1,a,a).\n"

    def test_round_trip_examples(self, example3, f3, f6, mutual_attack):
        for h in (example3, f3, f6, mutual_attack):
            assert parse(serialize(h)) == h

    @given(seed=st.integers(0, 300))
    def test_round_trip_generated(self, seed):
        h = generate_random(3, 2, 2, seed=seed, support_acyclic=False,
                            higher_order_prob=0.5)
        assert parse(serialize(h)) == h


class TestIncomingIndex:
    def test_matches_naive_scan(self):
        for h, _ in corpus(40, seed_base=500):
            for x in h.universe:
                naive_att = sorted(
                    ((r.source, r.id) for r in h.attacks if r.target == x),
                    key=lambda p: p[1])
                naive_supp = sorted(
                    ((t.source, t.id) for t in h.supports if t.target == x),
                    key=lambda p: p[1])
                assert list(h.attackers_of(x)) == naive_att
                assert list(h.supporters_of(x)) == naive_supp


class TestSupportAcyclic:
    def test_self_support_is_cyclic(self, example3):
        assert not is_support_acyclic(example3)

    def test_single_edge_is_acyclic(self):
        assert is_support_acyclic(parse("arg(a). arg(b). supp(t1,a,b)."))

    def test_three_cycle(self):
        h = parse("arg(a). arg(b). arg(c). supp(t1,a,b). supp(t2,b,c). supp(t3,c,a).")
        assert not is_support_acyclic(h)

    def test_agrees_with_kahn_oracle(self):
        for h, _ in corpus(60, seed_base=900):
            edges = [(t.source, t.target) for t in h.supports]
            assert is_support_acyclic(h) == kahn_is_acyclic(h.universe, edges)


class TestGenerateRandom:
    def test_single_argument(self):
        h = generate_random(1, 0, 0, seed=7, support_acyclic=True,
                            higher_order_prob=0.0)
        assert len(h.arguments) == 1 and not h.attacks and not h.supports

    def test_deterministic(self):
        a = generate_random(4, 3, 2, seed=99, support_acyclic=True, higher_order_prob=0.4)
        b = generate_random(4, 3, 2, seed=99, support_acyclic=True, higher_order_prob=0.4)
        assert a == b and serialize(a) == serialize(b)

    def test_acyclic_postcondition(self):
        h = generate_random(3, 3, 2, seed=42, support_acyclic=True, higher_order_prob=0.5)
        assert is_support_acyclic(h)

    def test_generated_pass_invariants(self):
        # reconstructing re-runs all HAFS validation
        for h, flagged in corpus(50, seed_base=1300):
            assert HAFS(h.arguments, h.attacks, h.supports) == h
            if flagged:
                assert is_support_acyclic(h)

    def test_infeasible_parameters(self):
        with pytest.raises(InfeasibleParametersError):
            generate_random(0, 0, 0, seed=1)
        # only one possible (a1, a1) support and it is a self-loop
        with pytest.raises(InfeasibleParametersError):
            generate_random(1, 0, 1, seed=1, support_acyclic=True,
                            higher_order_prob=0.0)

    def test_requested_counts(self):
        h = generate_random(3, 3, 3, seed=5, support_acyclic=False,
                            higher_order_prob=0.3)
        assert (len(h.arguments), len(h.attacks), len(h.supports)) == (3, 3, 3)


class TestSupportChain:
    def test_linked_chain(self):
        h = hafs.parse("arg(a). arg(b). arg(c). supp(t1,c,b). supp(t2,b,a).")
        chain = SupportChain((h.supports[0], h.supports[1]))
        assert chain.nodes == (argument("c"), argument("b"), argument("a"))
        assert chain.is_acyclic()

    def test_broken_link_rejected(self):
        h = hafs.parse("arg(a). arg(b). arg(c). supp(t1,a,b). supp(t2,c,a).")
        with pytest.raises(ValidationError, match="do not link"):
            SupportChain((h.supports[0], h.supports[1]))

    def test_cyclic_chain_detected(self, example3):
        chain = SupportChain((example3.supports[0],))
        assert not chain.is_acyclic()

    def test_attack_edge_rejected(self, f3):
        with pytest.raises(ValidationError, match="not a support"):
            SupportChain((f3.attacks[0],))


class TestRelationConstruction:
    def test_relation_kind_check(self):
        with pytest.raises(ValidationError):
            Relation(argument("x"), argument("a"), argument("b"))

    def test_programmatic_duplicate_name(self):
        with pytest.raises(ValidationError, match="duplicate name"):
            HAFS([argument("a"), argument("a")], [], [])

    def test_undeclared_endpoint(self):
        with pytest.raises(ValidationError, match="undeclared"):
            HAFS([argument("a")],
                 [Relation(attack_id("r1"), argument("a"), argument("zz"))], [])
