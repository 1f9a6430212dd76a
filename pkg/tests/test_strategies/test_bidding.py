"""Tests du protocole d'enchères Voronoï."""

import math

import numpy as np
import pytest

from coverage_lab.exceptions import PreconditionError
from coverage_lab.metrics.coverage import union_coverage
from coverage_lab.models import (
    BiddingParams,
    Deployment,
    MobileSensor,
    Point,
    Sensor,
    Strategy,
    Termination,
)
from coverage_lab.strategies.bidding import (
    BiddingProtocol,
    BiddingStrategy,
    bid_value,
    run_bidding,
    split_static_mobile,
)


def _mobile(sensor_id: int, x: float, y: float, price: float = 0.0) -> MobileSensor:
    return MobileSensor(sensor=Sensor(id=sensor_id, pos=Point(x=x, y=y)), base_price=price)


class TestBidValue:
    """Tests pour bid_value()."""

    def test_boundary_is_no_bid(self):
        assert bid_value(5.0, 5.0) is None

    def test_covered_vertex_is_no_bid(self):
        assert bid_value(4.5, 5.0) is None

    def test_hole_value(self):
        assert bid_value(10.0, 5.0) == pytest.approx(25 * math.pi)

    def test_invalid_radius(self):
        with pytest.raises(PreconditionError):
            bid_value(1.0, 0.0)


class TestBiddingProtocol:
    """Tests pour BiddingProtocol / run_bidding()."""

    def test_single_static_sends_mobile_to_corner(self, field_100, centered_sensor):
        """Une seule cellule = le terrain : le mobile rejoint le coin (0, 0), ramené à r_s du bord."""
        static = Deployment(sensors=[centered_sensor], field=field_100)
        protocol = BiddingProtocol(static, [_mobile(2, 52.0, 50.0)])
        before = union_coverage(protocol.deployment()).union_fraction
        final = protocol.run(max_rounds=5)

        mobile = final.sensors[1]
        assert (mobile.pos.x, mobile.pos.y) == (5.0, 5.0)
        assert protocol.mobiles[0].settled
        assert protocol.mobiles[0].base_price == pytest.approx(math.pi * (50 * math.sqrt(2) - 5) ** 2)
        assert protocol.termination == Termination.NO_MESSAGES
        assert union_coverage(final).union_fraction > before

    def test_dense_layout_never_moves(self, field_100):
        """Aucun trou : aucun message, les mobiles restent en place."""
        coords = [(x, y) for x in range(5, 100, 10) for y in range(5, 100, 10)]
        static = Deployment.from_positions(field_100, np.array(coords, dtype=float), r_s=8.0)
        mobiles = [_mobile(len(coords) + 1, 33.0, 44.0)]
        protocol = BiddingProtocol(static, mobiles)
        final = protocol.run(max_rounds=3)

        assert final.sensors[-1].pos == Point(x=33.0, y=44.0)
        assert len(protocol.rounds) == 1
        assert protocol.rounds[0].bids == []
        assert not protocol.mobiles[0].settled

    def test_base_price_gate(self, field_100, centered_sensor):
        """Un mobile dont le prix de base dépasse l'enchère ne reçoit rien."""
        static = Deployment(sensors=[centered_sensor], field=field_100)
        final = run_bidding(static, [_mobile(2, 80.0, 20.0, price=1e9)], max_rounds=3)

        assert final.sensors[1].pos == Point(x=80.0, y=20.0)

    def test_round_invariants(self, default_field):
        """Prix de base non décroissants ; la première acceptation est l'enchère maximale du tour."""
        static, mobiles = split_static_mobile(default_field, 25, 0.2, seed=3, r_s=5.0)
        protocol = BiddingProtocol(static, mobiles)
        prices = {m.sensor.id: m.base_price for m in mobiles}
        for index in range(1, 11):
            current = protocol._play_round(index)
            if current.accepted:
                assert current.accepted[0].value == max(b.value for b in current.bids)
                values = [b.value for b in current.accepted]
                assert values == sorted(values, reverse=True)
            for m in protocol.mobiles:
                assert m.base_price >= prices[m.sensor.id]
                prices[m.sensor.id] = m.base_price

    def test_each_mobile_accepts_its_best_bid(self, default_field):
        static, mobiles = split_static_mobile(default_field, 25, 0.2, seed=4, r_s=5.0)
        protocol = BiddingProtocol(static, mobiles)
        current = protocol._play_round(1)

        for accepted in current.accepted:
            received = [b.value for b in current.bids if b.mobile == accepted.mobile]
            assert accepted.value == max(received)

    @pytest.mark.parametrize("seed", [1, 2, 3, 4, 5])
    def test_coverage_never_below_initial_layout(self, default_field, seed):
        """20 statiques + 5 mobiles : la couverture finale égale au moins celle de départ."""
        static, mobiles = split_static_mobile(default_field, 25, 0.2, seed=seed, r_s=5.0)
        protocol = BiddingProtocol(static, mobiles)
        initial = union_coverage(protocol.deployment()).union_fraction
        final = protocol.run(max_rounds=20)

        assert len(static) == 20 and len(mobiles) == 5
        assert union_coverage(final).union_fraction >= initial
        assert protocol.counter.fraction == pytest.approx(union_coverage(final).union_fraction)

    def test_targets_stay_off_the_border(self, default_field):
        static, mobiles = split_static_mobile(default_field, 25, 0.2, seed=6, r_s=5.0)
        protocol = BiddingProtocol(static, mobiles)
        protocol.run(max_rounds=20)

        for played in protocol.rounds:
            for bid in played.bids:
                assert 5.0 <= bid.target.x <= default_field.width - 5.0
                assert 5.0 <= bid.target.y <= default_field.height - 5.0

    def test_losing_move_is_not_bid(self, field_100, centered_sensor, mocker):
        """Un déplacement qui ferait perdre de la couverture n'est jamais proposé."""
        static = Deployment(sensors=[centered_sensor], field=field_100)
        protocol = BiddingProtocol(static, [_mobile(2, 80.0, 20.0)])
        mocker.patch.object(protocol.counter, "move_gain", return_value=-1)
        final = protocol.run(max_rounds=3)

        assert final.sensors[1].pos == Point(x=80.0, y=20.0)
        assert protocol.rounds[0].bids == []
        assert protocol.termination == Termination.NO_MESSAGES

    def test_duplicate_ids_rejected(self, field_100, centered_sensor):
        static = Deployment(sensors=[centered_sensor], field=field_100)
        with pytest.raises(PreconditionError):
            BiddingProtocol(static, [_mobile(1, 10.0, 10.0)])

    def test_deterministic(self, default_field):
        a = BiddingStrategy(5.0).run(default_field, 40, seed=7)
        b = BiddingStrategy(5.0).run(default_field, 40, seed=7)

        assert np.array_equal(a.deployment.positions, b.deployment.positions)
        assert a.steps == b.steps


class TestBiddingStrategy:
    """Tests pour BiddingStrategy."""

    def test_split_counts(self, default_field):
        static, mobiles = split_static_mobile(default_field, 50, 0.2, seed=1, r_s=5.0)

        assert len(static) == 40
        assert [m.sensor.id for m in mobiles] == list(range(41, 51))

    def test_strategy_outcome(self, default_field):
        outcome = BiddingStrategy(5.0, BiddingParams(max_rounds=4)).run(default_field, 30, seed=2)

        assert BiddingStrategy.kind == Strategy.BIDDING
        assert len(outcome.deployment) == 30
        assert 1 <= outcome.steps <= 4
        assert len(outcome.details["rounds"]) == outcome.steps
