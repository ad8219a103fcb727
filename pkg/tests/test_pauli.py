import itertools

import numpy as np
import pytest
from hypothesis import given, strategies as st

from ferrtree.pauli import PauliError, PauliString, Phase, product_of

from _oracles import pauli_matrix
from conftest import EQ5_JW4

P = PauliString.from_label


def phase_value(k):
    return (1, 1j, -1, -1j)[k % 4]


class TestMultiply:
    def test_single_qubit_xy(self):
        phase, s = P("X").multiply(P("Y"))
        assert (phase.power_of_i, s.to_label()) == (1, "Z")

    def test_involution(self):
        phase, s = P("Z").multiply(P("Z"))
        assert (phase.power_of_i, s.to_label()) == (0, "I")

    def test_positionwise_four_qubits(self):
        phase, s = P("XIII").multiply(P("YIII"))
        assert (phase.power_of_i, s.to_label()) == (1, "ZIII")
        # dense 16x16 cross-check
        prod = pauli_matrix("XIII") @ pauli_matrix("YIII")
        assert np.allclose(prod, phase_value(phase.power_of_i) * pauli_matrix("ZIII"))

    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_dense_oracle_all_pairs(self, n):
        labels = ["".join(t) for t in itertools.product("IXYZ", repeat=n)]
        for a in labels:
            for b in labels:
                phase, s = P(a).multiply(P(b))
                got = phase_value(phase.power_of_i) * pauli_matrix(s.to_label())
                assert np.allclose(got, pauli_matrix(a) @ pauli_matrix(b)), (a, b)

    def test_dimension_mismatch(self):
        with pytest.raises(PauliError):
            P("XI").multiply(P("X"))


class TestNto:
    def test_examples(self):
        assert P("XIII").nto(P("YIII")) == 1
        assert P("XI").nto(P("XI")) == 0
        assert P("XY").nto(P("ZX")) == 2

    def test_anticommutation_oracle(self):
        # odd NTO <-> anticommutation, checked densely on 2 qubits
        labels = ["".join(t) for t in itertools.product("IXYZ", repeat=2)]
        for a in labels:
            for b in labels:
                ac = P(a).anticommutes(P(b))
                ma, mb = pauli_matrix(a), pauli_matrix(b)
                dense_ac = np.allclose(ma @ mb + mb @ ma, 0)
                assert ac == dense_ac
                assert ac == (P(a).nto(P(b)) % 2 == 1)

    def test_mismatch(self):
        with pytest.raises(PauliError):
            P("XI").nto(P("X"))


class TestAnticommutes:
    def test_examples(self):
        assert P("XIII").anticommutes(P("YIII"))
        assert not P("ZZ").anticommutes(P("ZZ"))
        assert not P("XY").anticommutes(P("ZX"))


class TestWeight:
    def test_examples(self):
        assert P("ZZZY").weight() == 4
        assert P("IIII").weight() == 0

    def test_eq5_total(self):
        # independent oracle: count non-I letters by hand = 1+1+2+2+3+3+4+4
        assert sum(P(lbl).weight() for lbl in EQ5_JW4) == 20
        assert sum(sum(ch != "I" for ch in lbl) for lbl in EQ5_JW4) == 20


class TestParsing:
    def test_round_trip(self):
        assert P("IXYZ").to_label() == "IXYZ"

    def test_leftmost_is_qubit_zero(self):
        s = P("ZXII")
        assert s.letter(0) == "Z"
        assert s.letter(1) == "X"

    def test_rejects_bad_characters(self):
        with pytest.raises(PauliError):
            P("AXYZ")
        with pytest.raises(PauliError):
            P("xyz")


class TestPhase:
    def test_multiplication_adds_mod_4(self):
        assert (Phase(3) * Phase(2)).power_of_i == 1
        assert Phase(5).power_of_i == 1
        assert Phase(2).value == -1


labels_st = st.integers(min_value=1, max_value=6).flatmap(
    lambda n: st.tuples(
        st.text(alphabet="IXYZ", min_size=n, max_size=n),
        st.text(alphabet="IXYZ", min_size=n, max_size=n),
    ))


class TestProperties:
    @given(labels_st)
    def test_commutation_phase_relation(self, pair):
        a, b = (P(x) for x in pair)
        pab, sab = a.multiply(b)
        pba, sba = b.multiply(a)
        assert sab == sba
        diff = (pab.power_of_i - pba.power_of_i) % 4
        assert diff == (2 if a.nto(b) % 2 else 0)

    @given(labels_st)
    def test_nto_symmetric(self, pair):
        a, b = (P(x) for x in pair)
        assert a.nto(b) == b.nto(a)
        assert a.nto(a) == 0

    @given(labels_st)
    def test_weight_subadditive(self, pair):
        a, b = (P(x) for x in pair)
        _, s = a.multiply(b)
        assert s.weight() <= a.weight() + b.weight()


def test_product_of_chain():
    phase, s = product_of([P("X"), P("Y"), P("Z")])
    # XYZ = iZ*Z = iI
    assert (phase.power_of_i, s.to_label()) == (1, "I")
