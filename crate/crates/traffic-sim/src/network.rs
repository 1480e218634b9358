//! Static road-network model: intersections, links, lanes, movements and
//! the eight-phase signal table shared by every four-way intersection.

use serde::{Deserialize, Serialize};

use crate::error::{Result, SimError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct IntersectionId(pub u32);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct LinkId(pub u32);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct LaneId(pub u32);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct MovementId(pub u32);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PhaseId(pub u8);

pub const PHASE_COUNT: usize = 8;
pub const LANES_PER_LINK: usize = 3;
pub const APPROACHES: usize = 4;
pub const INCOMING_LANES: usize = APPROACHES * LANES_PER_LINK;

/// Compass direction. Also fixes the canonical neighbor/approach ordering
/// (N, S, E, W) used for lane ordering and observation blocks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Direction {
    North,
    South,
    East,
    West,
}

pub const DIRECTIONS: [Direction; 4] = [
    Direction::North,
    Direction::South,
    Direction::East,
    Direction::West,
];

impl Direction {
    pub fn index(self) -> usize {
        match self {
            Direction::North => 0,
            Direction::South => 1,
            Direction::East => 2,
            Direction::West => 3,
        }
    }

    pub fn opposite(self) -> Direction {
        match self {
            Direction::North => Direction::South,
            Direction::South => Direction::North,
            Direction::East => Direction::West,
            Direction::West => Direction::East,
        }
    }

    /// Side of the intersection a vehicle exits through when turning left
    /// while arriving from this side.
    fn left_exit(self) -> Direction {
        match self {
            // arriving from the north means heading south; left is east
            Direction::North => Direction::East,
            Direction::South => Direction::West,
            Direction::East => Direction::South,
            Direction::West => Direction::North,
        }
    }

    fn right_exit(self) -> Direction {
        self.left_exit().opposite()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Turn {
    Left,
    Through,
    Right,
}

/// Lane index within a link: 0 = left-turn lane, 1 = through lane,
/// 2 = right-turn lane. Dedicated turn lanes, no mid-link lane changes.
pub const LANE_TURNS: [Turn; LANES_PER_LINK] = [Turn::Left, Turn::Through, Turn::Right];

impl Turn {
    pub fn exit_side(self, approach: Direction) -> Direction {
        match self {
            Turn::Through => approach.opposite(),
            Turn::Left => approach.left_exit(),
            Turn::Right => approach.right_exit(),
        }
    }

    pub fn lane_index(self) -> usize {
        match self {
            Turn::Left => 0,
            Turn::Through => 1,
            Turn::Right => 2,
        }
    }
}

/// Relative turn between two consecutive link headings, `None` for a U-turn.
pub fn turn_between(from: Direction, to: Direction) -> Option<Turn> {
    if from == to {
        return Some(Turn::Through);
    }
    if from == to.opposite() {
        return None;
    }
    // `from` is the heading; arriving from side opposite(from).
    let approach = from.opposite();
    if Turn::Left.exit_side(approach) == to {
        Some(Turn::Left)
    } else {
        Some(Turn::Right)
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Lane {
    pub id: LaneId,
    pub link: LinkId,
    /// 0 = left lane, 1 = through lane, 2 = right lane.
    pub index: usize,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Link {
    pub id: LinkId,
    /// Upstream intersection, `None` when the link enters from outside.
    pub from: Option<IntersectionId>,
    /// Downstream intersection, `None` when the link exits the network.
    pub to: Option<IntersectionId>,
    pub length: f64,
    pub speed_limit: f64,
    /// Direction of travel.
    pub heading: Direction,
    pub lanes: [LaneId; LANES_PER_LINK],
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Movement {
    pub id: MovementId,
    pub intersection: IntersectionId,
    /// Side the traffic arrives from.
    pub approach: Direction,
    pub turn: Turn,
    pub in_lane: LaneId,
    /// Canonical receiving lane (same lane index on the exit link). Vehicles
    /// may enter a different lane of the same link depending on their route.
    pub out_lane: LaneId,
    pub out_link: LinkId,
}

/// A signal phase: the set of simultaneously green movements. Right-turn
/// movements are included in every phase.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Phase {
    pub id: PhaseId,
    pub movements: Vec<MovementId>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Intersection {
    pub id: IntersectionId,
    /// Incoming link per side the traffic arrives from, N/S/E/W order.
    pub incoming: [LinkId; APPROACHES],
    /// Outgoing link per exit side, N/S/E/W order.
    pub outgoing: [LinkId; APPROACHES],
    /// 12 movements ordered by approach (N, S, E, W) then lane (0, 1, 2).
    pub movements: Vec<MovementId>,
    pub phases: Vec<Phase>,
    /// Grid neighbors, N/S/E/W order.
    pub neighbors: [Option<IntersectionId>; APPROACHES],
}

/// (approach, turn) pairs that define each of the eight phases, before the
/// always-green right turns are appended: NS-Straight, WE-Straight, NS-Left,
/// WE-Left, S-Straight+Left, W-Straight+Left, N-Straight+Left,
/// E-Straight+Left.
pub const PHASE_TABLE: [[(Direction, Turn); 2]; PHASE_COUNT] = [
    [(Direction::North, Turn::Through), (Direction::South, Turn::Through)],
    [(Direction::West, Turn::Through), (Direction::East, Turn::Through)],
    [(Direction::North, Turn::Left), (Direction::South, Turn::Left)],
    [(Direction::West, Turn::Left), (Direction::East, Turn::Left)],
    [(Direction::South, Turn::Through), (Direction::South, Turn::Left)],
    [(Direction::West, Turn::Through), (Direction::West, Turn::Left)],
    [(Direction::North, Turn::Through), (Direction::North, Turn::Left)],
    [(Direction::East, Turn::Through), (Direction::East, Turn::Left)],
];

/// Whether two movements may not be green at the same time. Right turns are
/// assumed unrestricted; opposing through/through and left/left pairs are
/// compatible; everything else crossing paths conflicts.
pub fn movements_conflict(a: (Direction, Turn), b: (Direction, Turn)) -> bool {
    if a.1 == Turn::Right || b.1 == Turn::Right {
        return false;
    }
    if a.0 == b.0 {
        return false;
    }
    if a.0 == b.0.opposite() {
        a.1 != b.1
    } else {
        true
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RoadNetwork {
    pub intersections: Vec<Intersection>,
    pub links: Vec<Link>,
    pub lanes: Vec<Lane>,
    pub movements: Vec<Movement>,
    /// For each lane, the movement it feeds (incoming lanes only).
    movement_of_lane: Vec<Option<MovementId>>,
}

impl RoadNetwork {
    pub fn new(
        intersections: Vec<Intersection>,
        links: Vec<Link>,
        lanes: Vec<Lane>,
        movements: Vec<Movement>,
    ) -> Result<Self> {
        let mut movement_of_lane = vec![None; lanes.len()];
        for m in &movements {
            movement_of_lane[m.in_lane.0 as usize] = Some(m.id);
        }
        let net = RoadNetwork {
            intersections,
            links,
            lanes,
            movements,
            movement_of_lane,
        };
        net.validate()?;
        Ok(net)
    }

    pub fn n_intersections(&self) -> usize {
        self.intersections.len()
    }

    pub fn intersection(&self, id: IntersectionId) -> &Intersection {
        &self.intersections[id.0 as usize]
    }

    pub fn link(&self, id: LinkId) -> &Link {
        &self.links[id.0 as usize]
    }

    pub fn lane(&self, id: LaneId) -> &Lane {
        &self.lanes[id.0 as usize]
    }

    pub fn lane_link(&self, id: LaneId) -> &Link {
        self.link(self.lane(id).link)
    }

    pub fn lane_length(&self, id: LaneId) -> f64 {
        self.lane_link(id).length
    }

    pub fn lane_speed_limit(&self, id: LaneId) -> f64 {
        self.lane_link(id).speed_limit
    }

    pub fn movement(&self, id: MovementId) -> &Movement {
        &self.movements[id.0 as usize]
    }

    /// Movement served by an incoming lane, `None` for lanes on exit links.
    pub fn movement_of_lane(&self, lane: LaneId) -> Option<MovementId> {
        self.movement_of_lane[lane.0 as usize]
    }

    /// The 12 incoming lanes of an intersection in canonical order:
    /// approach N, S, E, W, each with lanes 0, 1, 2.
    pub fn incoming_lanes(&self, id: IntersectionId) -> Vec<LaneId> {
        let inter = self.intersection(id);
        inter
            .incoming
            .iter()
            .flat_map(|l| self.link(*l).lanes.iter().copied())
            .collect()
    }

    /// The 12 outgoing lanes in the same canonical order.
    pub fn outgoing_lanes(&self, id: IntersectionId) -> Vec<LaneId> {
        let inter = self.intersection(id);
        inter
            .outgoing
            .iter()
            .flat_map(|l| self.link(*l).lanes.iter().copied())
            .collect()
    }

    pub fn neighbor(&self, id: IntersectionId, dir: Direction) -> Option<IntersectionId> {
        self.intersection(id).neighbors[dir.index()]
    }

    pub fn max_speed_limit(&self) -> f64 {
        self.links
            .iter()
            .map(|l| l.speed_limit)
            .fold(0.0, f64::max)
    }

    fn validate(&self) -> Result<()> {
        for inter in &self.intersections {
            let entity = format!("intersection {}", inter.id.0);
            if self.incoming_lanes(inter.id).len() != INCOMING_LANES
                || self.outgoing_lanes(inter.id).len() != INCOMING_LANES
            {
                return Err(SimError::Validation {
                    entity: entity.clone(),
                    reason: "expected 12 incoming and 12 outgoing lanes".into(),
                });
            }
            if inter.movements.len() != INCOMING_LANES {
                return Err(SimError::Validation {
                    entity: entity.clone(),
                    reason: format!("expected 12 movements, got {}", inter.movements.len()),
                });
            }
            for mid in &inter.movements {
                let m = self.movement(*mid);
                if m.intersection != inter.id {
                    return Err(SimError::Validation {
                        entity: entity.clone(),
                        reason: format!("movement {} assigned to wrong intersection", mid.0),
                    });
                }
                let in_link = self.lane_link(m.in_lane);
                if in_link.to != Some(inter.id) {
                    return Err(SimError::Validation {
                        entity: entity.clone(),
                        reason: format!("movement {} incoming lane not attached", mid.0),
                    });
                }
            }
            if inter.phases.len() != PHASE_COUNT {
                return Err(SimError::Validation {
                    entity: entity.clone(),
                    reason: format!("expected 8 phases, got {}", inter.phases.len()),
                });
            }
            for phase in &inter.phases {
                let keys: Vec<(Direction, Turn)> = phase
                    .movements
                    .iter()
                    .map(|mid| {
                        let m = self.movement(*mid);
                        (m.approach, m.turn)
                    })
                    .collect();
                for (i, a) in keys.iter().enumerate() {
                    for b in keys.iter().skip(i + 1) {
                        if movements_conflict(*a, *b) {
                            return Err(SimError::Validation {
                                entity: entity.clone(),
                                reason: format!(
                                    "phase {} contains conflicting movements {:?} / {:?}",
                                    phase.id.0, a, b
                                ),
                            });
                        }
                    }
                }
                for d in DIRECTIONS {
                    if !keys.contains(&(d, Turn::Right)) {
                        return Err(SimError::Validation {
                            entity: entity.clone(),
                            reason: format!("phase {} misses right turn from {:?}", phase.id.0, d),
                        });
                    }
                }
            }
            // neighbor symmetry
            for dir in DIRECTIONS {
                if let Some(other) = inter.neighbors[dir.index()] {
                    let back = self.intersection(other).neighbors[dir.opposite().index()];
                    if back != Some(inter.id) {
                        return Err(SimError::Validation {
                            entity: entity.clone(),
                            reason: format!(
                                "asymmetric neighbor map: {:?} neighbor {} does not point back",
                                dir, other.0
                            ),
                        });
                    }
                }
            }
        }
        for link in &self.links {
            if link.length <= 0.0 || link.speed_limit <= 0.0 {
                return Err(SimError::Validation {
                    entity: format!("link {}", link.id.0),
                    reason: "length and speed limit must be positive".into(),
                });
            }
        }
        Ok(())
    }
}
