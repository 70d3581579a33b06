"""Tests for the JSON input and output models."""

import json

import numpy as np
import pytest
from pydantic import ValidationError

from symext_qkd import __version__
from symext_qkd.bell.distribution import BellDiagonalDistribution
from symext_qkd.decide.models import Decision
from symext_qkd.models import (
    BellDiagonalModel,
    ChannelModel,
    ComplexMatrixModel,
    DecisionModel,
    DensityMatrixModel,
    OutputMetadata,
    parse_decide_input,
)
from symext_qkd.quantum.states import DensityMatrix


class TestParseDecideInput:
    def test_bell_diagonal(self):
        model = parse_decide_input(json.dumps({"type": "bell_diagonal", "pairs": 1, "weights": [0.4, 0.2, 0.2, 0.2]}))
        assert isinstance(model, BellDiagonalModel)
        state = model.to_domain()
        assert isinstance(state, BellDiagonalDistribution)
        assert state.pairs == 1
        assert np.allclose(state.weights, [0.4, 0.2, 0.2, 0.2])

    def test_density_matrix_without_imaginary_part(self):
        text = json.dumps({"type": "density_matrix", "dims": [2, 2], "re": (np.eye(4) / 4).tolist()})
        model = parse_decide_input(text)
        assert isinstance(model, DensityMatrixModel)
        rho = model.to_domain()
        assert isinstance(rho, DensityMatrix)
        assert rho.dims == (2, 2)
        assert np.allclose(rho.entries, np.eye(4) / 4)

    def test_channel_family(self):
        model = parse_decide_input(json.dumps({"type": "channel", "family": "dephasing", "q": 0.2}))
        assert isinstance(model, ChannelModel)
        assert model.to_domain().output_dim == 2

    def test_channel_kraus(self):
        kraus = [{"re": [[1.0, 0.0], [0.0, 1.0]]}]
        model = parse_decide_input(json.dumps({"type": "channel", "kraus": kraus}))
        channel = model.to_domain()
        assert len(channel.kraus_ops) == 1

    def test_unknown_type(self):
        with pytest.raises(ValidationError):
            parse_decide_input(json.dumps({"type": "unitary", "re": [[1.0]]}))

    def test_not_json(self):
        with pytest.raises(ValueError):
            parse_decide_input("{weights: ")


class TestValidators:
    def test_weight_count(self):
        with pytest.raises(ValidationError, match="need 4\\^N"):
            BellDiagonalModel(pairs=2, weights=[0.25] * 4)

    def test_declared_total(self):
        BellDiagonalModel(pairs=1, weights=[0.2, 0.1, 0.1, 0.1], total=0.5)
        with pytest.raises(ValidationError, match="declared total"):
            BellDiagonalModel(pairs=1, weights=[0.2, 0.1, 0.1, 0.1], total=0.9)

    def test_pairs_range(self):
        with pytest.raises(ValidationError):
            BellDiagonalModel(pairs=0, weights=[])

    def test_imaginary_shape(self):
        with pytest.raises(ValidationError, match="differs"):
            ComplexMatrixModel(re=[[1.0, 0.0], [0.0, 1.0]], im=[[0.0]])

    @pytest.mark.parametrize(
        "document",
        [
            {},
            {"family": "dephasing", "q": 0.1, "kraus": [{"re": [[1.0]]}]},
            {"family": "pauli"},
            {"family": "depolarizing"},
        ],
    )
    def test_channel_needs_one_description(self, document):
        with pytest.raises(ValidationError):
            ChannelModel(**document)


class TestRoundTrips:
    def test_complex_matrix(self):
        matrix = np.array([[1.0, 2.0j], [-2.0j, 3.0]])
        model = ComplexMatrixModel.from_array(matrix)
        assert model.im is not None
        assert np.array_equal(model.to_array(), matrix)
        assert ComplexMatrixModel.from_array(np.eye(2)).im is None

    def test_bell_diagonal_from_domain(self):
        state = BellDiagonalDistribution(1, np.array([0.5, 0.2, 0.2, 0.1]))
        model = BellDiagonalModel.from_domain(state)
        assert model.total == pytest.approx(1.0)
        assert np.allclose(model.to_domain().weights, state.weights)


class TestOutputs:
    def test_decision_model(self):
        decision = Decision.from_margin(0.25, "bell_diagonal.rank_one", alphas=[1.0, 0.0, 0.0])
        model = DecisionModel.from_decision(decision)
        assert model.verdict == "YES"
        assert model.rule == "bell_diagonal.rank_one"
        assert model.details == {"alphas": [1.0, 0.0, 0.0]}

    def test_metadata_header(self):
        metadata = OutputMetadata(
            command="threshold",
            seed=7,
            tolerances={"sdp_tol": 1e-9, "psd_tol": 1e-10},
            parameters={"protocol": "bb84", "blocksize": 3},
        )
        assert metadata.header_lines() == [
            "# command: threshold",
            f"# version: {__version__}",
            "# seed: 7",
            "# psd_tol: 1e-10",
            "# sdp_tol: 1e-09",
            "# blocksize: 3",
            "# protocol: bb84",
        ]

    def test_metadata_defaults_to_configured_tolerances(self):
        assert set(OutputMetadata(command="statespace").tolerances) >= {"sdp_tol", "psd_tol", "trace_tol"}
