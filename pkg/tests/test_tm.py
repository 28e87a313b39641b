"""
Turing machines: descriptions, the simulator and the encoding.
"""

import random

import pytest
from hypothesis import given, settings as hsettings, strategies as st

from walt_workbench.combinators.encoders import decode_projection, decode_string, decode_tuple, encode_string
from walt_workbench.combinators.piece import Piece
from walt_workbench.combinators.schemas import NAT
from walt_workbench.core.errors import NotAConfiguration, ParseError, TMSpecError
from walt_workbench.formulas.types import EagerLolli, Lolli, Par, par_n
from walt_workbench.judgments.annotated import Ap, erase
from walt_workbench.judgments.measures import depth
from walt_workbench.reduction.engine import reduce_to_nf
from walt_workbench.syntax.terms import apps
from walt_workbench.tm import clock, machine as mc, transition as tr
from walt_workbench.tm.simulate import TMConfig, output_portion, simulate_config, tm_simulate
from walt_workbench.tm.spec import Move, TMSpec, load_tmspec, parse_tmspec, print_tmspec, shipped_machines
from walt_workbench.tm.tapes import (
    DecodedConfig, TMTypes, configuration_piece, decode_config, decode_tape, symbol_node, tape_piece,
)

MACHINES = shipped_machines()
BITFLIP = load_tmspec(MACHINES["bitflip"])
PARITY = load_tmspec(MACHINES["parity"])
INCREMENT = load_tmspec(MACHINES["unary_increment"])
# writes a 1 and accepts in one step
WRITER = TMSpec(("go", "done"), ("0", "1", "_"), "go", "done",
                {("go", a): (Move.STAY, "1", "done") for a in "01_"}, (1,), name="writer")


def nf(head, *args):
    result, _ = reduce_to_nf(apps(head, *args), relation="beta")
    return result


def symbol(types, i):
    return erase(symbol_node(types, i))


@st.composite
def specs(draw):
    states = tuple(f"s{i}" for i in range(draw(st.integers(1, 3))))
    alphabet = ("0", "1", "_") + tuple(draw(st.lists(st.sampled_from(["a", "b"]), unique=True, max_size=2)))
    accept = draw(st.sampled_from(states))
    actions = st.tuples(st.sampled_from(list(Move)), st.sampled_from(alphabet), st.sampled_from(states))
    delta = {(s, a): draw(actions) for s in states if s != accept for a in alphabet}
    poly = (draw(st.integers(1, 3)),) + tuple(draw(st.lists(st.integers(0, 3), max_size=2)))
    return TMSpec(states, alphabet, draw(st.sampled_from(states)), accept, delta, poly, name="random")


class TestSpec:
    def test_shipped(self):
        assert set(MACHINES) == {"bitflip", "parity", "unary_increment"}

    def test_derived_numbers(self):
        assert (BITFLIP.degree, BITFLIP.coefficient_bound, BITFLIP.exponent) == (1, 4, 1)
        assert BITFLIP.clock(2) == 16

    def test_exponent(self):
        """The least e with degree <= 2^e"""
        base = dict(states=("s", "t"), alphabet=("0", "1", "_"), initial="s", accept="t",
                    delta={("s", a): (Move.STAY, a, "t") for a in "01_"})
        assert TMSpec(poly=(0, 0, 0, 1), **base).exponent == 2
        assert TMSpec(poly=(1, 0, 0, 0, 0, 1), **base).exponent == 3
        assert TMSpec(poly=(5,), **base).exponent == 1

    def test_indices(self):
        assert BITFLIP.symbol_index("0") == 1 and BITFLIP.symbol_index("_") == 3
        assert BITFLIP.state_index("done") == 2

    def test_round_trip(self):
        assert parse_tmspec(print_tmspec(BITFLIP)) == BITFLIP

    @hsettings(max_examples=50, deadline=None)
    @given(specs())
    def test_random_round_trip(self, spec):
        assert parse_tmspec(print_tmspec(spec)) == spec

    def test_missing_row(self):
        with pytest.raises(TMSpecError):
            TMSpec(("s", "t"), ("0", "1", "_"), "s", "t", {("s", "0"): (Move.STAY, "0", "t")})

    def test_leaving_the_accepting_state(self):
        delta = {("s", a): (Move.STAY, a, "t") for a in "01_"}
        delta[("t", "0")] = (Move.RIGHT, "0", "s")
        with pytest.raises(TMSpecError):
            TMSpec(("s", "t"), ("0", "1", "_"), "s", "t", delta)

    def test_unknown_symbol(self):
        with pytest.raises(TMSpecError):
            BITFLIP.symbol_index("2")

    def test_zero_polynomial(self):
        with pytest.raises(TMSpecError):
            TMSpec(("s",), ("0", "1", "_"), "s", "s", poly=(0, 0))

    def test_duplicate_row(self):
        text = print_tmspec(WRITER) + "  go 0 -> > 0 go\n"
        with pytest.raises(TMSpecError):
            parse_tmspec(text)

    def test_missing_key(self):
        with pytest.raises(TMSpecError):
            parse_tmspec("states: s\nalphabet: 0 1 _\naccept: s\n")

    def test_garbage(self):
        with pytest.raises(ParseError):
            parse_tmspec("states: s\ndelta:\n  s 0 -> ^ 0 s\n")

    def test_comments_and_order(self):
        text = """
        # accepts at once
        accept: s   # the only state
        alphabet: 0 1 _
        states: s
        initial: s
        """
        spec = parse_tmspec(text)
        assert spec.states == ("s",) and spec.delta == {} and spec.poly == (0, 1)


class TestSimulator:
    def test_writes_and_accepts(self):
        """Two steps on the empty tape: write, then stay accepted"""
        result = tm_simulate(WRITER, [], 2)
        assert (result.state, result.tape, result.head) == ("done", ["1"], 0)

    def test_already_accepting(self):
        spec = TMSpec(("s",), ("0", "1", "_"), "s", "s")
        assert tm_simulate(spec, ["0", "1"], 5) == ("s", ["0", "1"], 0)

    def test_bitflip(self):
        result = tm_simulate(BITFLIP, ["1", "0"])
        assert result.state == "done"
        assert (result.tape, result.head) == (["_", "0", "1", "_"], 1)
        assert output_portion(BITFLIP, result) == ("0", "1")

    def test_increment(self):
        result = tm_simulate(INCREMENT, ["1", "1"])
        assert result.state == "done"
        assert output_portion(INCREMENT, result) == ("1", "1", "1")

    @pytest.mark.parametrize("bits, parity", [(["1", "0", "1"], "0"), (["1"], "1"), (["0", "0"], "0")])
    def test_parity(self, bits, parity):
        result = tm_simulate(PARITY, bits)
        assert result.state == "done"
        assert output_portion(PARITY, result) == (parity,)

    def test_clock_bounds_the_run(self):
        assert tm_simulate(BITFLIP, ["1", "0"], 3).state == "back"
        assert tm_simulate(BITFLIP, []).state == "scan"

    def test_left_of_the_first_cell(self):
        spec = TMSpec(("go", "done"), ("0", "1", "_"), "go", "done",
                      {("go", a): (Move.LEFT, "1", "done") for a in "01_"})
        result = tm_simulate(spec, ["0"], 1)
        assert (result.tape, result.head) == (["_", "1"], 0)
        assert result.config == TMConfig((), "done", ("_", "1"))

    def test_configuration(self):
        assert simulate_config(BITFLIP, TMConfig((), "scan", ("1", "0")), 2) == TMConfig(("1", "0"), "scan", ())

    @hsettings(max_examples=50, deadline=None)
    @given(st.lists(st.sampled_from(["0", "1"]), max_size=4), st.integers(0, 8))
    def test_steps_compose(self, bits, k):
        for spec in (BITFLIP, PARITY, INCREMENT):
            before = tm_simulate(spec, bits, k).config
            assert simulate_config(spec, before) == tm_simulate(spec, bits, k + 1).config


class TestClock:
    @pytest.mark.parametrize("build", [clock.plus, clock.times, clock.string_coerce, clock.shared_diagonal,
                                       clock.square])
    def test_typing(self, build):
        piece = build()
        assert piece.derivation.conclusion.ty == piece.ty

    def test_npoly_type(self):
        _, d = clock.build_npoly(1, 2)
        assert d.conclusion.ty == EagerLolli(Par(NAT), par_n(4, NAT))

    @pytest.mark.slow
    def test_npoly_type_twice_squared(self):
        _, d = clock.build_npoly(2, 1)
        assert d.conclusion.ty == EagerLolli(Par(NAT), par_n(8, NAT))

    def test_plus(self):
        assert decode_string(nf(clock.plus().term, encode_string(2), encode_string(3))) == 5

    def test_times(self):
        assert decode_string(nf(clock.times().term, encode_string(2), encode_string(3))) == 6

    def test_square(self):
        assert decode_string(nf(clock.square().term, encode_string(2))) == 4

    def test_shared_diagonal(self):
        first, second = decode_tuple(nf(clock.shared_diagonal().term, encode_string(3)))
        assert decode_string(first) == decode_string(second) == 3

    def test_npoly(self):
        """K n^(2^e) with K=2, e=1 on 3"""
        term, _ = clock.build_npoly(1, 2)
        assert decode_string(nf(term, encode_string(3))) == 18

    @pytest.mark.slow
    def test_npoly_twice_squared(self):
        assert decode_string(nf(clock.npoly(2, 1).term, encode_string(2))) == 16

    def test_clock_on_the_input_length(self):
        types = TMTypes.of(BITFLIP)
        length = nf(mc.list_to_string(types).term, tape_piece(types, [1, 2]).term)
        assert decode_string(nf(clock.npoly(1, 4).term, length)) == BITFLIP.clock(2) == 16


class TestTapes:
    types = TMTypes.of(BITFLIP)

    def test_decode_configuration(self):
        piece = configuration_piece(self.types, [1], 0, [2, 3])
        assert decode_config(piece.term) == DecodedConfig((1,), 0, (2, 3))

    def test_decode_empty_halves(self):
        assert decode_config(configuration_piece(self.types, [], 2, []).term) == DecodedConfig((), 2, ())

    def test_not_a_configuration(self):
        with pytest.raises(NotAConfiguration):
            decode_config(encode_string(2))
        with pytest.raises(NotAConfiguration):
            decode_config(tape_piece(self.types, [1]).term)

    def test_decode_tape(self):
        assert decode_tape(tape_piece(self.types, [1, 2, 2]).term) == [1, 2, 2]
        assert decode_tape(tape_piece(self.types, []).term) == []

    def test_typing(self):
        conf = configuration_piece(self.types, [1], 1, [3])
        assert conf.derivation.conclusion.ty == self.types.configuration
        tape = tape_piece(self.types, [2, 1])
        assert tape.derivation.conclusion.ty == self.types.tape_list

    def test_list_to_config(self):
        """The input lands right of the head in the initial state"""
        term = nf(mc.list_to_config(BITFLIP).term, tape_piece(self.types, [2]).term)
        assert decode_config(term) == DecodedConfig((), 0, (2,))

    def test_list_to_string(self):
        assert decode_string(nf(mc.list_to_string(self.types).term, tape_piece(self.types, [1, 3, 2]).term)) == 3

    def test_alphabet_coerce(self):
        assert decode_projection(nf(mc.alphabet_coerce(self.types).term, symbol(self.types, 3))) == (5, 3)

    def test_push(self):
        term = nf(mc.push(self.types).term, symbol(self.types, 2), tape_piece(self.types, [1, 3]).term)
        assert decode_tape(term) == [2, 1, 3]

    def test_list_coerce(self):
        assert decode_tape(nf(mc.list_coerce(self.types).term, tape_piece(self.types, [3, 1]).term)) == [3, 1]

    def test_dup(self):
        n, tape = decode_tuple(nf(mc.dup(self.types).term, tape_piece(self.types, [1, 2]).term))
        assert decode_string(n) == 2
        assert decode_tape(tape) == [1, 2]

    @pytest.mark.parametrize("build", [mc.alphabet_coerce, mc.push, mc.list_to_string])
    def test_combinator_typing(self, build):
        piece = build(self.types)
        assert piece.derivation.conclusion.ty == piece.ty

    @pytest.mark.slow
    @pytest.mark.parametrize("build", [mc.list_coerce, mc.dup])
    def test_iterated_typing(self, build):
        piece = build(self.types)
        assert piece.derivation.conclusion.ty == piece.ty

    def test_list_to_config_typing(self):
        piece = mc.list_to_config(BITFLIP)
        assert piece.derivation.conclusion.ty == Lolli(self.types.tape_list, self.types.configuration)


class TestLookup:
    def test_move_right(self):
        assert tr.triple(BITFLIP, 1, 0, 2) == ((2, 2), 0, ())

    def test_blank_at_the_left_border(self):
        """Reading past the end, moving left from the first cell"""
        assert tr.triple(BITFLIP, 4, 0, 0) == ((0,), 1, (3, 3, 4))

    def test_move_left(self):
        assert tr.triple(BITFLIP, 2, 1, 1) == ((), 1, (1, 2))

    def test_stay_past_the_end(self):
        assert tr.triple(PARITY, 4, 0, 3) == ((3,), 2, (1, 4))

    def test_accepting(self):
        assert tr.triple(BITFLIP, 2, 2, 1) == ((1,), 2, (2,))

    def test_unreachable(self):
        assert tr.triple(BITFLIP, 1, 0, 4) == ((), 2, ())
        assert tr.triple(BITFLIP, 0, 1, 2) == ((), 2, ())

    def test_free_constructors(self):
        term, names = tr.build_lookup(BITFLIP)
        assert len(names) == 5 * 3 * 5
        assert term.free_vars <= frozenset(names)

    def test_selection(self):
        """Projecting on the head symbol, the state and the left symbol reaches the entry"""
        types = TMTypes.of(BITFLIP)
        term, names = tr.build_lookup(BITFLIP)
        head, state, left = 2, 1, 1
        selected = nf(symbol(types, left), nf(erase(tr.state_node(types, state)), nf(symbol(types, head), term)))
        index = (head * types.states + state) * types.width + left
        expected = erase(tr._entry_node(types, tr.triple(BITFLIP, head, state, left), names[index]))
        assert selected == expected

    @pytest.mark.slow
    def test_typing(self):
        piece = tr.lookup_piece(WRITER)
        assert piece.derivation.conclusion.ty == tr.lookup_type(TMTypes.of(WRITER))


class TestStep:
    @pytest.mark.slow
    def test_typing(self):
        types = TMTypes.of(WRITER)
        _, d = tr.build_delta_bar(WRITER)
        assert d.conclusion.ty == Lolli(types.configuration, types.configuration)

    @pytest.mark.slow
    def test_halves_typing(self):
        types = TMTypes.of(WRITER)
        assert tr.c2p(types).derivation.conclusion.ty == Lolli(types.configuration, tr.pre_configuration(types))
        assert tr.p2c(WRITER).derivation.conclusion.ty == Lolli(tr.pre_configuration(types), types.configuration)

    @pytest.mark.slow
    def test_c2p_exposes_the_heads(self):
        """C2P leaves a pre-configuration whose halves open on their first symbol"""
        types = TMTypes.of(BITFLIP)
        pre = nf(tr.c2p(types).term, configuration_piece(types, [1], 0, [2]).term)
        assert pre.free_vars == frozenset()
        assert decode_config(nf(tr.p2c(BITFLIP).term, pre)) == DecodedConfig((1, 1), 0, ())

    @pytest.mark.slow
    @pytest.mark.parametrize("config", [
        TMConfig((), "scan", ("1", "0")),
        TMConfig((), "scan", ()),
        TMConfig(("1",), "back", ("0",)),
        TMConfig(("0", "1"), "scan", ()),
        TMConfig((), "back", ("1",)),
    ])
    def test_one_step(self, config):
        assert mc.tm_step(BITFLIP, config) == simulate_config(BITFLIP, config)

    @pytest.mark.slow
    def test_accepting_step_keeps_the_tape(self):
        config = TMConfig(("_",), "done", ("0", "_"))
        assert mc.tm_step(BITFLIP, config) == config

    @pytest.mark.slow
    def test_random_configurations(self):
        rng = random.Random(0)
        for _ in range(50):
            config = TMConfig(tuple(rng.choices(PARITY.alphabet, k=rng.randint(0, 2))),
                              rng.choice(PARITY.states),
                              tuple(rng.choices(PARITY.alphabet, k=rng.randint(0, 2))))
            assert mc.tm_step(PARITY, config) == simulate_config(PARITY, config)


class TestMachine:
    def test_type(self):
        types = TMTypes.of(WRITER)
        assert mc.machine_piece(WRITER).ty == Lolli(types.tape_list, par_n(5, types.configuration))

    @pytest.mark.slow
    def test_derivation(self):
        types = TMTypes.of(WRITER)
        _, d = mc.encode_machine(WRITER)
        assert d.conclusion.ty == Lolli(types.tape_list, par_n(5, types.configuration))

    @pytest.mark.slow
    def test_depth_does_not_grow_with_the_input(self):
        types = TMTypes.of(WRITER)
        m = mc.machine_piece(WRITER)

        def applied(n):
            return Piece("M x", Ap(m.node, tape_piece(types, [1] * n).node), par_n(5, types.configuration))

        assert depth(applied(1).derivation) == depth(applied(2).derivation)

    @pytest.mark.slow
    def test_empty_input(self):
        """No clock ticks on the empty tape"""
        assert mc.verify_run(WRITER, []) == TMConfig((), "go", ())

    @pytest.mark.slow
    def test_writer(self):
        config, trace = mc.tm_run(WRITER, ["0"])
        assert config == TMConfig((), "done", ("1",))
        assert trace.step_count > 0

    @pytest.mark.slow
    def test_bitflip(self):
        config = mc.verify_run(BITFLIP, ["1"])
        assert config.state == "done"
        assert output_portion(BITFLIP, config) == ("0",)

    @pytest.mark.slow
    @pytest.mark.parametrize("spec, symbols", [
        pytest.param(PARITY, ["1"], id="parity-1"),
        pytest.param(INCREMENT, ["1"], id="unary_increment-1"),
        pytest.param(PARITY, ["1", "0"], id="parity-10"),
        pytest.param(BITFLIP, ["1", "0"], id="bitflip-10"),
    ])
    def test_shipped_machines(self, spec, symbols):
        """State and output portion agree with the simulator"""
        expected = tm_simulate(spec, symbols).config
        config, trace = mc.tm_run(spec, symbols)
        assert config.state == expected.state
        assert output_portion(spec, config) == output_portion(spec, expected)
        assert trace.step_count > 0
