export * from "./types";
export * from "./client";
export * from "./session";
export * from "./wizard";
export * from "./frontier";
export * from "./whatIf";
export * from "./format";
