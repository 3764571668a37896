//! The six motion axes and a fixed-size per-axis container.

use std::fmt;
use std::ops::{Index, IndexMut};
use std::str::FromStr;

use serde::de::{self, MapAccess, Visitor};
use serde::ser::SerializeMap;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::Error;

/// One of the six rigid-body motion axes.
///
/// Translations are in m/s², rotations in rad/s². Roll, pitch and yaw are the
/// rotations about x, y and z respectively, which is why reports label them
/// `rx`, `ry` and `rz`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Axis {
    X,
    Y,
    Z,
    Roll,
    Pitch,
    Yaw,
}

impl Axis {
    pub const ALL: [Axis; 6] = [Axis::X, Axis::Y, Axis::Z, Axis::Roll, Axis::Pitch, Axis::Yaw];

    pub fn index(self) -> usize {
        match self {
            Axis::X => 0,
            Axis::Y => 1,
            Axis::Z => 2,
            Axis::Roll => 3,
            Axis::Pitch => 4,
            Axis::Yaw => 5,
        }
    }

    pub fn is_rotational(self) -> bool {
        matches!(self, Axis::Roll | Axis::Pitch | Axis::Yaw)
    }

    /// Name used in manifests and on the command line.
    pub fn name(self) -> &'static str {
        match self {
            Axis::X => "x",
            Axis::Y => "y",
            Axis::Z => "z",
            Axis::Roll => "roll",
            Axis::Pitch => "pitch",
            Axis::Yaw => "yaw",
        }
    }

    /// Name used for metric columns (`x, y, z, rx, ry, rz`).
    pub fn metric_label(self) -> &'static str {
        match self {
            Axis::X => "x",
            Axis::Y => "y",
            Axis::Z => "z",
            Axis::Roll => "rx",
            Axis::Pitch => "ry",
            Axis::Yaw => "rz",
        }
    }

    /// Column name in trace CSV files.
    pub fn trace_column(self) -> &'static str {
        match self {
            Axis::X => "ax",
            Axis::Y => "ay",
            Axis::Z => "az",
            Axis::Roll => "aroll",
            Axis::Pitch => "apitch",
            Axis::Yaw => "ayaw",
        }
    }

    pub fn unit(self) -> Unit {
        if self.is_rotational() {
            Unit::RadPerS2
        } else {
            Unit::MPerS2
        }
    }
}

impl fmt::Display for Axis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Axis {
    type Err = Error;

    /// Accepts both the axis names and the metric labels.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "x" => Ok(Axis::X),
            "y" => Ok(Axis::Y),
            "z" => Ok(Axis::Z),
            "roll" | "rx" => Ok(Axis::Roll),
            "pitch" | "ry" => Ok(Axis::Pitch),
            "yaw" | "rz" => Ok(Axis::Yaw),
            other => Err(Error::Config(format!("unknown axis '{other}'"))),
        }
    }
}

/// Acceleration unit carried by FRF channel metadata.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Unit {
    MPerS2,
    RadPerS2,
}

impl Unit {
    pub fn as_str(self) -> &'static str {
        match self {
            Unit::MPerS2 => "m/s2",
            Unit::RadPerS2 => "rad/s2",
        }
    }
}

impl fmt::Display for Unit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Unit {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "m/s2" | "m/s^2" | "m/s²" => Ok(Unit::MPerS2),
            "rad/s2" | "rad/s^2" | "rad/s²" => Ok(Unit::RadPerS2),
            other => Err(Error::Manifest(format!("unknown unit '{other}'"))),
        }
    }
}

/// One value per axis, indexed by [`Axis`].
///
/// Serializes as a map keyed by metric label in axis order.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct AxisValues<T>(pub [T; 6]);

impl<T> AxisValues<T> {
    pub fn from_fn(mut f: impl FnMut(Axis) -> T) -> Self {
        AxisValues(Axis::ALL.map(&mut f))
    }

    pub fn iter(&self) -> impl Iterator<Item = (Axis, &T)> {
        Axis::ALL.into_iter().zip(self.0.iter())
    }

    pub fn map<U>(&self, mut f: impl FnMut(Axis, &T) -> U) -> AxisValues<U> {
        AxisValues::from_fn(|a| f(a, &self[a]))
    }
}

impl<T> Index<Axis> for AxisValues<T> {
    type Output = T;
    fn index(&self, axis: Axis) -> &T {
        &self.0[axis.index()]
    }
}

impl<T> IndexMut<Axis> for AxisValues<T> {
    fn index_mut(&mut self, axis: Axis) -> &mut T {
        &mut self.0[axis.index()]
    }
}

impl<T: Serialize> Serialize for AxisValues<T> {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(6))?;
        for (axis, v) in self.iter() {
            map.serialize_entry(axis.metric_label(), v)?;
        }
        map.end()
    }
}

impl<'de, T: Deserialize<'de>> Deserialize<'de> for AxisValues<T> {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        struct AxisMapVisitor<T>(std::marker::PhantomData<T>);

        impl<'de, T: Deserialize<'de>> Visitor<'de> for AxisMapVisitor<T> {
            type Value = AxisValues<T>;

            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("a map with one entry per axis")
            }

            fn visit_map<A: MapAccess<'de>>(self, mut access: A) -> Result<Self::Value, A::Error> {
                let mut slots: [Option<T>; 6] = Default::default();
                while let Some(key) = access.next_key::<String>()? {
                    let axis: Axis = key.parse().map_err(de::Error::custom)?;
                    if slots[axis.index()].is_some() {
                        return Err(de::Error::custom(format!("duplicate axis '{key}'")));
                    }
                    slots[axis.index()] = Some(access.next_value()?);
                }
                let mut out = Vec::with_capacity(6);
                for (axis, slot) in Axis::ALL.into_iter().zip(slots) {
                    out.push(slot.ok_or_else(|| {
                        de::Error::custom(format!("missing axis '{}'", axis.metric_label()))
                    })?);
                }
                let arr: [T; 6] = out.try_into().unwrap_or_else(|_| unreachable!());
                Ok(AxisValues(arr))
            }
        }

        deserializer.deserialize_map(AxisMapVisitor(std::marker::PhantomData))
    }
}
