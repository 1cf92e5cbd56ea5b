import { defineConfig } from "vitest/config";

export default defineConfig({
  build: {
    target: "es2022",
    sourcemap: true,
  },
  test: {
    include: ["src/**/*.test.ts", "test/**/*.test.ts"],
    globalSetup: ["./test/serviceSetup.ts"],
    testTimeout: 60_000,
    hookTimeout: 120_000,
  },
});
