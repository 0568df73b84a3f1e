//! Configuration, snapshots and CSV output.

mod config;
mod csv;
mod snapshot;
mod value;

pub use config::{
    default_forcing, parse_config, AttractorConfig, Config, ConvergeConfig, DiagConfig, FieldSpec,
    GridConfig, IdentitiesConfig, IntensityConfig, NoiseCheckConfig, PhysicsConfig, RunConfig,
    SmoothingConfig, TimeConfig,
};
pub use csv::{fmt_num, trajectory_table, CsvTable, TRAJECTORY_HEADER};
pub use snapshot::{decode_snapshot, encode_snapshot, read_snapshot, write_snapshot, Snapshot, MAGIC, VERSION};
pub use value::{parse_value, Value};
