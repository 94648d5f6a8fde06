//! The lattice of principal right ideals and perspectivity witnesses.

mod ideal;
mod perspectivity;

pub use ideal::{Ideal, IdealComponentJson};
pub use perspectivity::{
    common_complement, independent, is_axis, is_module_iso, is_neutral, mvn_witness, random_ideal,
    AxisChecks, MvnWitness, NeutralReport, PerspectivityAxis,
};
