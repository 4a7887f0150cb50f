//! Certificate integers travel as `i64`: flattened and internally tagged
//! serde representations cannot buffer `i128`.

use serde::de::DeserializeOwned;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::Int;

pub(super) trait Wire: Sized {
    type Repr: Serialize + DeserializeOwned;
    fn to_repr(&self) -> Option<Self::Repr>;
    fn from_repr(r: Self::Repr) -> Self;
}

impl Wire for Int {
    type Repr = i64;
    fn to_repr(&self) -> Option<i64> {
        i64::try_from(*self).ok()
    }
    fn from_repr(r: i64) -> Self {
        r as Int
    }
}

impl<T: Wire> Wire for Vec<T> {
    type Repr = Vec<T::Repr>;
    fn to_repr(&self) -> Option<Self::Repr> {
        self.iter().map(Wire::to_repr).collect()
    }
    fn from_repr(r: Self::Repr) -> Self {
        r.into_iter().map(T::from_repr).collect()
    }
}

pub(super) fn serialize<T: Wire, S: Serializer>(v: &T, s: S) -> Result<S::Ok, S::Error> {
    v.to_repr()
        .ok_or_else(|| serde::ser::Error::custom("certificate integer exceeds i64"))?
        .serialize(s)
}

pub(super) fn deserialize<'de, T: Wire, D: Deserializer<'de>>(d: D) -> Result<T, D::Error> {
    T::Repr::deserialize(d).map(T::from_repr)
}
