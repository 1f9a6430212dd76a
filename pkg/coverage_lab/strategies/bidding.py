"""
Protocole d'enchères Voronoï (capteurs mobiles) — Coverage Lab.

À chaque tour synchrone :
1. Les capteurs statiques (et les mobiles déjà installés) calculent leur
   cellule de Voronoï bornée
2. Chaque statique ayant un trou (sommet le plus éloigné hors de portée)
   envoie une enchère π(d − r_s)² au mobile le plus proche dont le prix
   de base est inférieur, si le déplacement de ce mobile vers le trou ne
   fait pas baisser la couverture
3. Chaque mobile accepte sa meilleure enchère, rejoint le sommet visé
   (ramené à r_s du bord) et adopte l'enchère comme nouveau prix de base

Les enchères d'un tour sont toutes calculées sur le même instantané. Les
déplacements acceptés sont appliqués par enchère décroissante, chacun
revérifié sur la couverture courante : la couverture ne diminue jamais.
"""

from __future__ import annotations

import logging
import math

import numpy as np

from coverage_lab.exceptions import PreconditionError
from coverage_lab.geometry.voronoi import cells_for_sites, farthest_vertex
from coverage_lab.metrics.coverage import CoverageCounter
from coverage_lab.models import (
    Bid,
    BiddingParams,
    BiddingRound,
    Deployment,
    MobileSensor,
    Point,
    Sensor,
    SensorField,
    Strategy,
    Termination,
)
from coverage_lab.strategies.base_strategy import BaseStrategy, StrategyOutcome
from coverage_lab.strategies.random_deployers import deploy_uniform
from coverage_lab.utils.helpers import derive_seed, make_rng

logger = logging.getLogger("coverage_lab.bidding")


def bid_value(d: float, r_s: float) -> float | None:
    """π(d − r_s)² si le sommet est hors de portée, sinon None (pas d'enchère)."""
    if d < 0 or r_s <= 0:
        raise PreconditionError(f"bid_value : d ≥ 0 et r_s > 0 requis (d={d}, r_s={r_s})")
    if d <= r_s:
        return None
    return math.pi * (d - r_s) ** 2


class BiddingProtocol:
    """Exécute les tours d'enchères et conserve leur journal."""

    def __init__(self, static: Deployment, mobiles: list[MobileSensor]):
        ids = [s.id for s in static.sensors] + [m.sensor.id for m in mobiles]
        if len(set(ids)) != len(ids):
            raise PreconditionError("identifiants dupliqués entre capteurs statiques et mobiles")
        self.static = static
        self.field: SensorField = static.field
        self.mobiles: list[MobileSensor] = list(mobiles)
        self.rounds: list[BiddingRound] = []
        self.termination: Termination | None = None
        self.counter: CoverageCounter | None = (
            CoverageCounter.for_deployment(self.deployment()) if ids else None
        )

    def run(self, max_rounds: int) -> Deployment:
        if max_rounds < 1:
            raise PreconditionError(f"max_rounds doit être ≥ 1 (reçu {max_rounds})")
        self.termination = Termination.MAX_ROUNDS
        for index in range(1, max_rounds + 1):
            current = self._play_round(index)
            self.rounds.append(current)
            if not current.bids:
                self.termination = Termination.NO_MESSAGES
                break
        moved = sum(1 for m in self.mobiles if m.settled)
        logger.info(
            f"🔨 Enchères terminées ({self.termination.value}) — "
            f"{len(self.rounds)} tour(s), {moved}/{len(self.mobiles)} mobile(s) installé(s)"
        )
        return self.deployment()

    def deployment(self) -> Deployment:
        """Déploiement courant : statiques + mobiles, triés par identifiant."""
        sensors = sorted(
            [*self.static.sensors, *(m.sensor for m in self.mobiles)], key=lambda s: s.id
        )
        return Deployment(sensors=sensors, field=self.field)

    # ── Un tour ──────────────────────────────

    def _play_round(self, index: int) -> BiddingRound:
        static_sensors = self.static.sensors
        sites = [*static_sensors, *(m.sensor for m in self.mobiles if m.settled)]
        if not sites:
            return BiddingRound(index=index)
        cells = cells_for_sites(sites, self.field)

        bids: list[Bid] = []
        for sensor, cell in zip(static_sensors, cells):
            if not cell.vertices:
                continue
            vertex, distance = farthest_vertex(cell, sensor)
            value = bid_value(distance, sensor.r_s)
            if value is None:
                continue
            target = self._nearest_mobile(sensor, value)
            if target is None:
                continue
            spot = self._landing_point(vertex, target.sensor.r_s)
            if self._gain(target, spot) < 0:
                continue
            bids.append(Bid(bidder=sensor.id, target=spot, value=value, mobile=target.sensor.id))

        best: dict[int, Bid] = {}
        for bid in bids:
            held = best.get(bid.mobile)
            if held is None or (bid.value, -bid.bidder) > (held.value, -held.bidder):
                best[bid.mobile] = bid

        # Revérifié sur la couverture courante : un déplacement du même tour peut l'avoir changée
        accepted: list[Bid] = []
        for bid in sorted(best.values(), key=lambda b: (-b.value, b.bidder)):
            if self._gain(self._mobile(bid.mobile), bid.target) >= 0:
                self._relocate(bid)
                accepted.append(bid)
        if accepted:
            logger.debug(
                f"Tour {index} : {len(bids)} enchère(s), {len(accepted)} acceptée(s), "
                f"max={accepted[0].value:.3f}"
            )
        return BiddingRound(index=index, bids=bids, accepted=accepted)

    def _nearest_mobile(self, sensor: Sensor, value: float) -> MobileSensor | None:
        eligible = [m for m in self.mobiles if m.base_price < value]
        if not eligible:
            return None
        return min(eligible, key=lambda m: (sensor.pos.distance_to(m.sensor.pos), m.sensor.id))

    def _mobile(self, sensor_id: int) -> MobileSensor:
        return next(m for m in self.mobiles if m.sensor.id == sensor_id)

    def _landing_point(self, vertex: Point, r_s: float) -> Point:
        """Sommet ramené dans [r_s, côté − r_s] (centre du côté si le terrain est plus étroit)."""

        def clamp(value: float, side: float) -> float:
            if side < 2 * r_s:
                return side / 2
            return min(max(value, r_s), side - r_s)

        return Point(x=clamp(vertex.x, self.field.width), y=clamp(vertex.y, self.field.height))

    def _gain(self, mobile: MobileSensor, spot: Point) -> int:
        pos = mobile.sensor.pos
        return self.counter.move_gain((pos.x, pos.y), (spot.x, spot.y), mobile.sensor.r_s)

    def _relocate(self, bid: Bid) -> None:
        for k, mobile in enumerate(self.mobiles):
            if mobile.sensor.id == bid.mobile:
                pos = mobile.sensor.pos
                self.counter.move((pos.x, pos.y), (bid.target.x, bid.target.y), mobile.sensor.r_s)
                self.mobiles[k] = MobileSensor(
                    sensor=mobile.sensor.model_copy(update={"pos": bid.target}),
                    base_price=max(mobile.base_price, bid.value),
                    settled=True,
                )
                return


def run_bidding(static: Deployment, mobiles: list[MobileSensor], max_rounds: int) -> Deployment:
    """Joue au plus max_rounds tours d'enchères et renvoie le déploiement final."""
    return BiddingProtocol(static, mobiles).run(max_rounds)


def split_static_mobile(
    field: SensorField, n: int, mobile_fraction: float, seed: int, r_s: float
) -> tuple[Deployment, list[MobileSensor]]:
    """Tire n capteurs uniformes dont une fraction est mobile (identifiants s+1..n)."""
    n_mobile = min(n - 1, max(1, round(n * mobile_fraction))) if n >= 2 else 0
    n_static = n - n_mobile
    static = deploy_uniform(field, n_static, derive_seed(seed, 0), r_s)
    rng = make_rng(derive_seed(seed, 1))
    positions = np.column_stack([
        rng.uniform(0.0, field.width, n_mobile),
        rng.uniform(0.0, field.height, n_mobile),
    ])
    mobiles = [
        MobileSensor(sensor=Sensor(id=n_static + k + 1, pos=Point(x=float(x), y=float(y)), r_s=r_s))
        for k, (x, y) in enumerate(positions)
    ]
    return static, mobiles


class BiddingStrategy(BaseStrategy):
    """Statiques uniformes + mobiles relocalisés par enchères Voronoï."""

    name = "Bidding"
    kind = Strategy.BIDDING

    def __init__(self, r_s: float, params: BiddingParams | None = None):
        super().__init__(r_s)
        self.params = params or BiddingParams()

    def run(self, field: SensorField, n: int, seed: int) -> StrategyOutcome:
        self._log_start(n, seed)
        static, mobiles = split_static_mobile(field, n, self.params.mobile_fraction, seed, self.r_s)
        if not static.sensors:
            outcome = StrategyOutcome(deployment=static)
        else:
            protocol = BiddingProtocol(static, mobiles)
            deployment = protocol.run(self.params.max_rounds)
            outcome = StrategyOutcome(
                deployment=deployment,
                steps=len(protocol.rounds),
                details={"rounds": protocol.rounds, "termination": protocol.termination},
            )
        self._log_done(outcome)
        return outcome
